#include "linca/rule.hpp"

#include "linca/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace linca {

LocalRule::LocalRule(Modulus m, std::int64_t left, std::span<const Elem> coeffs)
    : mod_(std::move(m)), left_(left) {
    std::size_t lo = 0, hi = coeffs.size();
    while (lo < hi && mod_.reduce_u(coeffs[lo]) == 0) ++lo;
    while (hi > lo && mod_.reduce_u(coeffs[hi - 1]) == 0) --hi;
    if (lo == hi) {
        left_ = 0;
        coeffs_.assign(1, 0);
        return;
    }
    left_ += static_cast<std::int64_t>(lo);
    coeffs_.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) coeffs_.push_back(mod_.reduce_u(coeffs[i]));
}

namespace {
std::vector<Elem> reduce_all(const Modulus& m, std::initializer_list<std::int64_t> cs) {
    std::vector<Elem> out;
    out.reserve(cs.size());
    for (auto c : cs) out.push_back(m.reduce(c));
    return out;
}
}  // namespace

LocalRule::LocalRule(Modulus m, std::int64_t left, std::initializer_list<std::int64_t> coeffs)
    : LocalRule(m, left, std::span<const Elem>(reduce_all(m, coeffs))) {}

LocalRule LocalRule::zero(Modulus m) {
    const Elem z = 0;
    return LocalRule(std::move(m), 0, std::span<const Elem>(&z, 1));
}

LocalRule LocalRule::monomial(Modulus m, std::int64_t index, Elem c) {
    return LocalRule(std::move(m), index, std::span<const Elem>(&c, 1));
}

Elem LocalRule::coeff(std::int64_t index) const noexcept {
    if (index < left_ || index > right()) return 0;
    return coeffs_[static_cast<std::size_t>(index - left_)];
}

std::string LocalRule::render() const {
    std::ostringstream os;
    os << "f(x_" << left_ << "..x_" << right() << ") = ";
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        os << coeffs_[i] << "*x_" << left_ + static_cast<std::int64_t>(i);
        first = false;
    }
    if (first) os << '0';
    os << " (mod " << mod_.value() << ')';
    return os.str();
}

namespace {

struct Cursor {
    std::string_view source;
    std::size_t line;

    [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
        std::ostringstream os;
        os << source << ':' << line << ':' << col << ": " << msg;
        throw Error(Errc::parse, os.str());
    }
};

template <typename Int>
Int parse_int(const Cursor& cur, std::string_view text, std::size_t col) {
    Int value{};
    if (text.empty()) cur.fail(col, "expected integer");
    const char* first = text.data();
    if (text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range) cur.fail(col, "integer out of range");
    if (ec != std::errc() || ptr == first)
        cur.fail(col, "expected integer, found '" + std::string(text) + "'");
    if (ptr != text.data() + text.size())
        cur.fail(col + static_cast<std::size_t>(ptr - text.data()),
                 "unexpected character '" + std::string(1, *ptr) + "'");
    return value;
}

std::string_view expect_key(const Cursor& cur, std::string_view line, std::string_view key) {
    if (line.substr(0, key.size()) != key || line.size() <= key.size() || line[key.size()] != '=')
        cur.fail(1, "expected '" + std::string(key) + "=<...>'");
    return line.substr(key.size() + 1);
}

}  // namespace

LocalRule parse_rule(std::string_view text, std::string_view source) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() != 3) {
        Cursor cur{source, lines.size() < 3 ? lines.size() + 1 : 4};
        cur.fail(1, lines.size() < 3 ? "unexpected end of file, expected m=, l= and coeffs= lines"
                                     : "unexpected extra content after coeffs= line");
    }

    Cursor c1{source, 1};
    auto m_text = expect_key(c1, lines[0], "m");
    auto m_val = parse_int<std::uint64_t>(c1, m_text, 3);
    if (m_val < 2 || m_val > kMaxModulus) c1.fail(3, "modulus must be in [2, 4294967295]");
    Modulus mod(m_val);

    Cursor c2{source, 2};
    auto l_val = parse_int<std::int64_t>(c2, expect_key(c2, lines[1], "l"), 3);

    Cursor c3{source, 3};
    auto list = expect_key(c3, lines[2], "coeffs");
    std::vector<Elem> coeffs;
    std::size_t col = 8;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = list.find(',', start);
        auto item = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        coeffs.push_back(mod.reduce(parse_int<std::int64_t>(c3, item, col + start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    LocalRule rule(mod, l_val, coeffs);
    if (rule.is_zero()) c3.fail(8, "all coefficients vanish modulo m; a CA rule needs a nonzero coefficient");
    return rule;
}

LocalRule load_rule(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open rule file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_rule(ss.str(), path);
}

std::string serialize_rule(const LocalRule& rule) {
    std::ostringstream os;
    os << "m=" << rule.modulus().value() << "\nl=" << rule.left() << "\ncoeffs=";
    for (std::size_t i = 0; i < rule.coeffs().size(); ++i) os << (i ? "," : "") << rule.coeffs()[i];
    os << '\n';
    return os.str();
}

}  // namespace linca
