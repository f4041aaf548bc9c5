// Gadget templates and creation loops.
//
// Frame: x east, y north. Digit i (1 = least significant) owns columns
// A_i = c + 3(d-i), B_i = A_i+1, C_i = A_i+2; columns [0,c) are the lip.
// A counter row's bits live in a band of 3l-2 rows: l slots of 2 rows plus one
// pass-through row above each of slots 1..l-2. Inside a slot with lower row 0:
//   reader lane: R=(C,0,1) guesses P0=(B,0,1) (bit 0, R's west) and
//                P1=(C,0,0) (bit 1, below R), then Q=(C,1,1), next R above.
//   writer lane: enters (B,0,0) from below, leaves (B,1,0) northwards;
//                bit 0 takes (C,0,0),(C,1,0), bit 1 takes (B,0,1),(B,1,1).
// So each bit value blocks exactly the wrong guess. Between bands sits a zone
// of rows U_0..U_3 carrying the writer exit (U_0), the return row (U_1, z=0)
// and the read-to-write hand-off (column C z=1 up to U_2, then column B).
// Column A holds the down column at z=0 and the return column at z=1.

#include <functional>
#include <stdexcept>

#include "tilerect/rectgen.hpp"

namespace tilerect {

namespace {

std::string L(std::initializer_list<std::string> t) { return encode_label(t); }
std::string num(long long v) { return std::to_string(v); }

class Shape {
public:
    int add(int from, Dir d) {
        Vec3 at = cells_[static_cast<std::size_t>(from)].rel + offset(d);
        for (const auto& c : cells_)
            if (c.rel == at) throw std::logic_error("template revisits a cell");
        cells_.push_back({at, from, d});
        return static_cast<int>(cells_.size()) - 1;
    }
    int walk(int from, std::string_view dirs) {
        for (char ch : dirs) from = add(from, parse_dir(ch));
        return from;
    }
    Shape& input(Dir side, std::string label) {
        input_ = Port{0, side, std::move(label)};
        return *this;
    }
    Shape& output(int cell, Dir side, std::string label) {
        outputs_.push_back({cell, side, std::move(label)});
        return *this;
    }
    Gadget make(const std::string& family, const std::string& args, const std::string& unit) const {
        Gadget g;
        g.family = family;
        g.name = family + "[" + args + "]";
        g.unit = unit;
        g.input = input_;
        g.outputs = outputs_;
        g.cells = cells_;
        return g;
    }

private:
    std::vector<GadgetCell> cells_{GadgetCell{{0, 0, 0}, -1, Dir::N}};
    std::optional<Port> input_;
    std::vector<Port> outputs_;
};

const char* kDFill = "d_fill";

// Writes one bit bottom-up from (B,0,0); returns the exit cell.
int write_slot(Shape& s, int bit, bool pass) {
    int top = s.walk(0, bit ? "UND" : "ENW");
    if (pass) {
        top = s.add(top, Dir::N);
        s.add(top, Dir::E);  // dead end filling (C,pass,0)
    }
    return top;
}

Gadget counter_write(const std::string& in, const std::string& out, int bit, bool pass) {
    Shape s;
    s.input(Dir::S, in);
    int top = write_slot(s, bit, pass);
    s.output(top, Dir::N, out);
    return s.make(bit ? "Counter_Write_1" : "Counter_Write_0", in, "counter");
}

Gadget counter_write_msb(const std::string& in, const std::string& out, int bit) {
    Shape s;
    s.input(Dir::S, in);
    int a = 0;
    if (bit) {
        int u0 = s.add(s.walk(0, "UND"), Dir::N);  // (B,U_0)
        s.add(u0, Dir::E);                          // dead end (C,U_0)
        a = s.add(u0, Dir::W);
    } else {
        // (C,U_0) stays on the path: roof fillers reach it only after an all-zero write.
        int c1 = s.walk(0, "EN");
        s.add(c1, Dir::W);  // dead end (B,1)
        a = s.walk(c1, "NWW");
    }
    s.output(a, Dir::S, out);
    return s.make(bit ? "Counter_Write_Msb_1" : "Counter_Write_Msb_0", in, "counter");
}

// Input cell is the guess cell; bit selects which one.
int read_slot(Shape& s, int bit) {
    return s.walk(0, bit ? "NU" : "NE");
}

Gadget counter_read(const std::string& in, const std::string& out1, const std::string& out0, int bit, bool pass) {
    Shape s;
    s.input(bit ? Dir::U : Dir::E, in);
    int q = read_slot(s, bit);
    if (pass) q = s.add(q, Dir::N);
    int r = s.add(q, Dir::N);
    s.output(r, Dir::D, out1).output(r, Dir::W, out0);
    return s.make(bit ? "Counter_Read_1" : "Counter_Read_0", in, "counter");
}

Gadget counter_read_msb(const std::string& in, const std::string& out, int bit) {
    Shape s;
    s.input(bit ? Dir::U : Dir::E, in);
    int q = read_slot(s, bit);
    int b = s.walk(q, "NNNDWN");  // up C at z=1 to U_2, drop, step west, up to (B,U_3)
    s.output(b, Dir::N, out);
    return s.make(bit ? "Counter_Read_Msb_1" : "Counter_Read_Msb_0", in, "counter");
}

Gadget single(const std::string& family, const std::string& unit, Dir in_side, const std::string& in, Dir out_side,
              const std::string& out) {
    Shape s;
    s.input(in_side, in).output(0, out_side, out);
    return s.make(family, in, unit);
}

// From (A,U_1,0) of the least significant digit to its first read cell.
// Returns the R_1 cell; (C,U_3,1) presents d_fill below.
int return_row_tail(Shape& s, int a) {
    int b = s.add(a, Dir::E);
    s.add(b, Dir::E);  // dead end (C,U_1,0)
    int c3 = s.walk(b, "UNNE");
    return s.add(c3, Dir::N);
}

}  // namespace

std::vector<Gadget> gen_seed_unit(const ConstructionParams& p) {
    const long long d = p.d, l = p.l;
    std::vector<Gadget> out;
    {
        Shape s;
        int last = 0;
        for (long long i = 0; i < p.c; ++i) last = s.add(last, Dir::E);
        s.output(last, Dir::N, L({"seed", "col", num(d), "1"}));
        out.push_back(s.make("Seed_Start_" + num(p.c), "", "seed"));
    }
    // Bit j of digit i as stored: bin(2v+f, l).
    auto bit_of = [&](long long i, long long j) {
        std::string code = digit_code(digit(p.s, p.m, static_cast<int>(i)), i == d, static_cast<int>(l));
        return code[static_cast<std::size_t>(l - j)] == '1' ? 1 : 0;
    };
    auto seed_bit = [&](long long i, long long j, int bit) {
        Shape s;
        std::string in = L({"seed", "bit", num(i), num(j)});
        s.input(Dir::N, in);
        int top = 0;
        if (j <= l - 2) {
            s.add(0, Dir::E);  // dead end in the pass row
            top = s.add(0, Dir::S);
        }
        int bottom = s.walk(top, bit ? "USD" : "ESW");
        s.output(bottom, Dir::S, L({"seed", "bit", num(i), num(j - 1)}));
        return s.make(bit ? "Seed_Bit_1" : "Seed_Bit_0", in, "seed");
    };
    for (long long i = d; i >= 1; --i) {
        for (long long j = 1; j <= 3 * l - 3; ++j)
            out.push_back(single("Up_Column", "seed", Dir::S, L({"seed", "col", num(i), num(j)}), Dir::N,
                                 L({"seed", "col", num(i), num(j + 1)})));
        {
            int bit = bit_of(i, l);
            Shape s;
            std::string in = L({"seed", "col", num(i), num(3 * l - 2)});
            s.input(Dir::S, in);
            int u0 = s.walk(0, "NNE");  // (B,3l)
            s.add(u0, Dir::E);          // dead end (C,3l)
            int bottom = s.walk(s.add(u0, Dir::S), bit ? "USD" : "ESW");
            s.output(bottom, Dir::S, L({"seed", "bit", num(i), num(l - 1)}));
            out.push_back(s.make(bit ? "Seed_Msb_1" : "Seed_Msb_0", in, "seed"));
        }
        for (long long j = l - 1; j >= 2; --j) out.push_back(seed_bit(i, j, bit_of(i, j)));
        if (i == d) {
            out.push_back(seed_bit(d, 1, 1));
        } else {
            out.push_back(seed_bit(i, 1, 0));
        }
        if (i > 1) {
            Shape s;
            std::string in = L({"seed", "bit", num(i), "0"});
            s.input(Dir::N, in);
            int a = s.walk(0, "SEE");
            s.output(a, Dir::N, L({"seed", "col", num(i - 1), "1"}));
            out.push_back(s.make("Seed_Spacer", in, "seed"));
        }
    }
    {
        Shape s;
        std::string in = L({"seed", "bit", "1", "0"});
        s.input(Dir::N, in);
        int r = s.walk(0, "SENUN");
        s.output(r, Dir::D, L({"inc", "read", "1"})).output(r, Dir::W, L({"inc", "read", "0"}));
        out.push_back(s.make("Seed_End", in, "seed"));
    }
    return out;
}

std::vector<Gadget> gen_counter_units(const ConstructionParams& p) {
    const long long l = p.l, m = p.m;
    std::vector<Gadget> out;
    // Reads of bits 1..l-1: input string b u has length i+1, bit index j = i+1.
    for (long long i = 0; i <= l - 2; ++i) {
        bool pass = i + 1 <= l - 2;
        for (unsigned long long v = 0; v < (1ULL << i); ++v) {
            std::string u = bin(v, static_cast<int>(i));
            for (const char* x : {"inc", "copy"})
                for (int b = 0; b <= 1; ++b) {
                    std::string bu = std::string(1, static_cast<char>('0' + b)) + u;
                    out.push_back(counter_read(L({x, "read", bu}), L({x, "read", "1" + bu}), L({x, "read", "0" + bu}), b, pass));
                }
        }
    }
    auto msb_bit = [&](long long i) { return bin(static_cast<unsigned long long>(i), static_cast<int>(l))[0] == '1' ? 1 : 0; };
    for (long long i = 0; i <= 2 * m - 1; ++i)
        out.push_back(counter_read_msb(L({"copy", "read", bin(static_cast<unsigned long long>(i), static_cast<int>(l))}),
                                       L({"copy", "write", bin(static_cast<unsigned long long>(i), static_cast<int>(l))}), msb_bit(i)));
    for (long long i = 0; i <= 2 * m - 3; ++i)
        out.push_back(counter_read_msb(L({"inc", "read", bin(static_cast<unsigned long long>(i), static_cast<int>(l))}),
                                       L({"copy", "write", bin(static_cast<unsigned long long>(i + 2), static_cast<int>(l))}), msb_bit(i)));
    out.push_back(counter_read_msb(L({"inc", "read", bin(static_cast<unsigned long long>(2 * m - 2), static_cast<int>(l))}),
                                   L({"inc", "write_all_0s", "1"}), 1));
    // Writers: the bit written by an input string of length n is bit l-n+1.
    auto pass_for_len = [&](long long n) { return l - n + 1 <= l - 2; };
    for (long long i = 1; i <= l - 1; ++i)
        out.push_back(counter_write(L({"inc", "write_all_0s", num(i)}), L({"inc", "write_all_0s", num(i + 1)}), 0, i <= l - 2));
    for (unsigned long long v = 0; v < (1ULL << (l - 1)); ++v) {
        std::string u = bin(v, static_cast<int>(l - 1));
        bool pass = pass_for_len(l);
        out.push_back(counter_write(L({"copy", "write", u + "0"}), L({"copy", "write", u}), 0, pass));
        out.push_back(counter_write(L({"copy", "write", u + "1"}), L({"msd", "write", u}), 1, pass));
    }
    for (long long i = 1; i <= l - 2; ++i) {
        bool pass = pass_for_len(i + 1);
        for (unsigned long long v = 0; v < (1ULL << i); ++v) {
            std::string u = bin(v, static_cast<int>(i));
            for (const char* x : {"copy", "msd"})
                for (int b = 0; b <= 1; ++b)
                    out.push_back(counter_write(L({x, "write", u + static_cast<char>('0' + b)}), L({x, "write", u}), b, pass));
        }
    }
    out.push_back(counter_write_msb(L({"inc", "write_all_0s", num(l)}), L({"inc", "down_z_0", "1"}), 0));
    out.push_back(counter_write_msb(L({"copy", "write", "0"}), L({"copy", "down_z_0", "1"}), 0));
    out.push_back(counter_write_msb(L({"copy", "write", "1"}), L({"copy", "down_z_0", "1"}), 1));
    out.push_back(counter_write_msb(L({"msd", "write", "0"}), L({"msd", "down_z_0", "1"}), 0));
    out.push_back(counter_write_msb(L({"msd", "write", "1"}), L({"msd", "down_z_0", "1"}), 1));
    for (const char* x : {"inc", "copy"})
        for (long long i = 1; i <= 3 * l - 2; ++i)
            out.push_back(single("Down_Column", "counter", Dir::N, L({x, "down_z_0", num(i)}), Dir::S, L({x, "down_z_0", num(i + 1)})));
    for (long long i = 1; i <= 3 * l - 3; ++i)
        out.push_back(single("Down_Column", "counter", Dir::N, L({"msd", "down_z_0", num(i)}), Dir::S, L({"msd", "down_z_0", num(i + 1)})));
    for (const char* x : {"inc", "copy"}) {
        Shape s;
        std::string in = L({x, "down_z_0", num(3 * l - 1)});
        s.input(Dir::N, in);
        int last = s.walk(0, "SUSS");
        s.output(last, Dir::S, L({x, "down_z_1", "1"}));
        out.push_back(s.make("Counter_Return_Column_Start", in, "counter"));
    }
    for (const char* x : {"inc", "copy"})
        for (long long i = 1; i <= l - 1; ++i) {
            Shape s;
            std::string in = L({x, "down_z_1", num(i)});
            s.input(Dir::N, in);
            int last = s.walk(0, "SS");
            s.output(last, Dir::S, L({x, "down_z_1", num(i + 1)}));
            out.push_back(s.make("Counter_Return_Column", in, "counter"));
        }
    for (const char* x : {"inc", "copy"}) {
        Shape s;
        std::string in = L({x, "down_z_1", num(l)});
        s.input(Dir::N, in);
        int hop = s.walk(0, "SW");
        int r = s.add(hop, Dir::N);
        s.output(hop, Dir::D, kDFill).output(r, Dir::D, L({x, "read", "1"})).output(r, Dir::W, L({x, "read", "0"}));
        out.push_back(s.make("Counter_Return_Column_End", in, "counter"));
    }
    return out;
}

std::vector<Gadget> gen_return_row(const ConstructionParams& p) {
    const long long d = p.d, l = p.l;
    std::vector<Gadget> out;
    std::string msd_in = L({"msd", "down_z_0", num(3 * l - 2)});
    if (d == 1) {
        Shape s;
        s.input(Dir::N, msd_in);
        int a = s.walk(0, "SSS");
        int r = return_row_tail(s, a);
        s.output(r, Dir::D, L({"inc", "read", "1"})).output(r - 1, Dir::D, kDFill).output(r, Dir::W, L({"inc", "read", "0"}));
        out.push_back(s.make("Return_Row_Single", msd_in, "return_row"));
        return out;
    }
    {
        Shape s;
        s.input(Dir::N, msd_in);
        int c = s.walk(0, "SSSEE");
        s.output(c, Dir::E, L({"return", "1"}));
        out.push_back(s.make("Return_Row_Start", msd_in, "return_row"));
    }
    for (long long i = 1; i <= d - 2; ++i) {
        Shape s;
        std::string in = L({"return", num(i)});
        s.input(Dir::W, in);
        int c = s.walk(0, "EE");
        s.output(c, Dir::E, L({"return", num(i + 1)}));
        out.push_back(s.make("Return_Row", in, "return_row"));
    }
    {
        Shape s;
        std::string in = L({"return", num(d - 1)});
        s.input(Dir::W, in);
        int r = return_row_tail(s, 0);
        s.output(r, Dir::D, L({"inc", "read", "1"})).output(r - 1, Dir::D, kDFill).output(r, Dir::W, L({"inc", "read", "0"}));
        out.push_back(s.make("Return_Row_End", in, "return_row"));
    }
    return out;
}

std::vector<Gadget> gen_roof(const ConstructionParams& p) {
    const long long d = p.d, l = p.l, m = p.m, r = p.r, c = p.c;
    std::vector<Gadget> out;
    auto col = [](long long i) { return L({"roof", "col", num(i)}); };
    out.push_back(single("Up_Column", "roof", Dir::U, L({"inc", "read", bin(static_cast<unsigned long long>(2 * m - 1), static_cast<int>(l))}),
                         Dir::N, col(2)));
    out.push_back(single("Up_Column", "roof", Dir::S, col(2), Dir::U, col(3)));
    for (long long i = 3; i <= l + 2; ++i) {
        Shape s;
        if (i == 3) {
            s.input(Dir::D, col(i));
            int low = s.walk(0, "NND");  // (C,U_1,0)
            int top = s.add(low, Dir::N);
            s.output(top, Dir::N, col(i + 1)).output(low, Dir::E, L({"roof", "filler", "1"}));
        } else {
            s.input(Dir::S, col(i));
            int mid = s.add(0, Dir::N);
            int top = s.add(mid, Dir::N);
            s.output(top, Dir::N, col(i + 1)).output(mid, Dir::E, L({"roof", "filler", "1"}));
        }
        out.push_back(s.make("Roof_Chimney", col(i), "roof"));
    }
    for (long long i = 1; i <= d - 1; ++i) {
        Shape s;
        std::string in = L({"roof", "filler", num(i)});
        s.input(Dir::W, in);
        int b = s.add(0, Dir::E);
        int cc = s.add(b, Dir::E);
        int c3 = s.walk(b, "UNNE");
        s.output(cc, Dir::E, L({"roof", "filler", num(i + 1)})).output(c3, Dir::D, kDFill);
        out.push_back(s.make("Roof_Filler", in, "roof"));
    }
    for (long long i = l + 3; i <= l + r + 4; ++i)
        out.push_back(single("Up_Column", "roof", Dir::S, col(i), Dir::N, col(i + 1)));
    {
        Shape s;
        s.input(Dir::S, col(l + r + 5));
        s.output(0, Dir::E, L({"roof", "r_shingle", "1"})).output(0, Dir::W, L({"roof", "l_shingle", "1"}));
        out.push_back(s.make("Roof_Cap", col(l + r + 5), "roof"));
    }
    for (long long i = 1; i <= c + 2; ++i) {
        Shape s;
        std::string in = L({"roof", "l_shingle", num(i)});
        s.input(Dir::E, in).output(0, Dir::S, kDFill).output(0, Dir::W, L({"roof", "l_shingle", num(i + 1)}));
        out.push_back(s.make("Roof_Left_Shingle", in, "roof"));
    }
    if (r > 0)
        for (long long i = 1; i <= 3 * d - 3; ++i) {
            Shape s;
            std::string in = L({"roof", "r_shingle", num(i)});
            s.input(Dir::W, in).output(0, Dir::E, L({"roof", "r_shingle", num(i + 1)})).output(0, Dir::S, kDFill);
            out.push_back(s.make("Roof_Right_Shingle", in, "roof"));
        }
    return out;
}

std::vector<Gadget> gen_filler(const ConstructionParams&) {
    return {single("Filler", "filler", Dir::N, kDFill, Dir::S, kDFill),
            single("Fill_Drop", "filler", Dir::U, kDFill, Dir::S, kDFill)};
}

}  // namespace tilerect
