#include "semidec/io.hpp"

#include "semidec/errors.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace semidec {

namespace {

class Tokenizer {
public:
    explicit Tokenizer(std::istream& in) : in_(in) {}

    // next whitespace-separated token; empty at end of input
    std::string next() {
        int c;
        for (;;) {
            c = in_.get();
            if (c == EOF) return {};
            if (c == '\n') {
                ++line_;
                col_ = 0;
                continue;
            }
            ++col_;
            if (!std::isspace(c)) break;
        }
        token_line_ = line_;
        token_col_ = col_;
        std::string tok(1, static_cast<char>(c));
        while ((c = in_.peek()) != EOF && !std::isspace(c)) {
            tok.push_back(static_cast<char>(in_.get()));
            ++col_;
        }
        return tok;
    }

    int line() const { return token_line_; }
    int column() const { return token_col_; }

private:
    std::istream& in_;
    int line_ = 1, col_ = 0;
    int token_line_ = 1, token_col_ = 1;
};

bool is_integer_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

Int expect_integer(Tokenizer& tz, const std::string& what) {
    std::string tok = tz.next();
    if (tok.empty())
        throw parse_error("unexpected end of input, expected " + what, tz.line(),
                          tz.column());
    if (!is_integer_token(tok))
        throw parse_error("non-integer token '" + tok + "', expected " + what,
                          tz.line(), tz.column());
    return Int(tok);
}

std::size_t expect_count(Tokenizer& tz, const std::string& what) {
    Int v = expect_integer(tz, what);
    if (v < 0 || !v.fits_ulong_p())
        throw parse_error("invalid " + what + " '" + v.get_str() + "'", tz.line(),
                          tz.column());
    return v.get_ui();
}

} // namespace

IntMatrix parse_mat(std::istream& in, const std::string& source) {
    Tokenizer tz(in);
    std::size_t rows = expect_count(tz, "row count");
    std::size_t cols = expect_count(tz, "column count");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = expect_integer(tz, "matrix entry");
    std::string extra = tz.next();
    if (!extra.empty())
        throw parse_error("trailing token '" + extra + "' after " +
                              std::to_string(rows * cols) + " entries in " + source,
                          tz.line(), tz.column());
    return m;
}

IntMatrix parse_mat_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open matrix file '" + path + "'", 0, 0);
    return parse_mat(in, path);
}

IntVec parse_moduli(std::istream& in, const std::string& source) {
    Tokenizer tz(in);
    std::size_t h = expect_count(tz, "moduli count");
    IntVec moduli(h);
    for (std::size_t j = 0; j < h; ++j) {
        moduli[j] = expect_integer(tz, "modulus");
        if (moduli[j] < 1)
            throw parse_error("nonpositive modulus '" + moduli[j].get_str() + "' in " +
                                  source,
                              tz.line(), tz.column());
    }
    std::string extra = tz.next();
    if (!extra.empty())
        throw parse_error("trailing token '" + extra + "' in " + source, tz.line(),
                          tz.column());
    return moduli;
}

IntVec parse_moduli_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open moduli file '" + path + "'", 0, 0);
    return parse_moduli(in, path);
}

void write_mat(std::ostream& out, const IntMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n' << m;
}

} // namespace semidec
