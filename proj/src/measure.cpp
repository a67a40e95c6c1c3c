#include "linca/measure.hpp"

#include "linca/automaton.hpp"
#include "linca/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace linca {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- Cylinder

Cylinder::Cylinder(std::int64_t start, std::vector<Elem> word) : start_(start), word_(std::move(word)) {
    if (word_.empty()) throw Error(Errc::invalid_argument, "cylinder word must be nonempty");
}

Cylinder Cylinder::reduced(std::uint64_t d) const {
    std::vector<Elem> w(word_);
    for (auto& s : w) s %= d;
    return Cylinder(start_, std::move(w));
}

void Cylinder::check_symbols(const Modulus& m) const {
    for (auto s : word_)
        if (s >= m.value())
            throw Error(Errc::invalid_argument, "cylinder " + render() + " has symbol " + std::to_string(s) +
                                                    " outside Z_" + std::to_string(m.value()));
}

std::string Cylinder::render() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < word_.size(); ++i) os << (i ? "," : "") << word_[i];
    os << "]@" << start_;
    return os.str();
}

namespace {

[[noreturn]] void cylinder_error(std::string_view text, std::size_t pos, const std::string& msg) {
    std::ostringstream os;
    os << "cylinder '" << text << "' column " << pos + 1 << ": " << msg;
    throw Error(Errc::parse, os.str());
}

template <typename Int>
Int read_int(std::string_view text, std::size_t& pos) {
    Int v{};
    const char* b = text.data() + pos;
    const char* e = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr == b) cylinder_error(text, pos, "expected integer");
    pos += static_cast<std::size_t>(ptr - b);
    return v;
}

}  // namespace

Cylinder parse_cylinder(std::string_view text) {
    std::size_t pos = 0;
    if (text.empty() || text[0] != '[') cylinder_error(text, 0, "expected '['");
    ++pos;
    std::vector<Elem> word;
    while (true) {
        word.push_back(read_int<std::uint64_t>(text, pos));
        if (pos >= text.size()) cylinder_error(text, pos, "unterminated word, expected ']'");
        if (text[pos] == ',') {
            ++pos;
            continue;
        }
        if (text[pos] != ']') cylinder_error(text, pos, "expected ',' or ']'");
        ++pos;
        break;
    }
    if (pos >= text.size() || text[pos] != '@') cylinder_error(text, pos, "expected '@<start>'");
    ++pos;
    auto start = read_int<std::int64_t>(text, pos);
    if (pos != text.size()) cylinder_error(text, pos, "trailing characters");
    return Cylinder(start, std::move(word));
}

// -------------------------------------------------------- ConstraintSystem

ConstraintSystem::ConstraintSystem(Modulus m, std::int64_t lo, std::int64_t hi) : mod_(std::move(m)), lo_(lo), hi_(hi) {
    if (hi < lo) {
        lo_ = 0;
        hi_ = -1;
    }
}

ConstraintSystem ConstraintSystem::diagonal(Modulus m, const Cylinder& c) {
    c.check_symbols(m);
    ConstraintSystem sys(m, c.start(), c.end());
    const Elem one = 1;
    for (std::size_t i = 0; i < c.length(); ++i)
        sys.add_equation(c.start() + static_cast<std::int64_t>(i), std::span<const Elem>(&one, 1), c.word()[i]);
    return sys;
}

void ConstraintSystem::widen(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) return;
    if (empty_window()) {
        lo_ = lo;
        hi_ = hi;
        for (auto& row : rows_) row.coeffs.assign(num_vars(), 0);
        return;
    }
    std::int64_t nlo = std::min(lo_, lo), nhi = std::max(hi_, hi);
    if (nlo == lo_ && nhi == hi_) return;
    auto front = static_cast<std::size_t>(lo_ - nlo);
    auto back = static_cast<std::size_t>(nhi - hi_);
    for (auto& row : rows_) {
        row.coeffs.insert(row.coeffs.begin(), front, 0);
        row.coeffs.insert(row.coeffs.end(), back, 0);
    }
    lo_ = nlo;
    hi_ = nhi;
}

void ConstraintSystem::add_equation(std::int64_t first, std::span<const Elem> coeffs, Elem rhs) {
    if (coeffs.empty()) throw Error(Errc::invalid_argument, "equation needs at least one coefficient");
    widen(first, first + static_cast<std::int64_t>(coeffs.size()) - 1);
    ConstraintRow row{std::vector<Elem>(num_vars(), 0), mod_.reduce_u(rhs)};
    bool nonzero = false;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Elem c = mod_.reduce_u(coeffs[i]);
        row.coeffs[static_cast<std::size_t>(first - lo_) + i] = c;
        nonzero |= (c != 0);
    }
    if (!nonzero && row.rhs == 0) return;
    rows_.push_back(std::move(row));
}

void ConstraintSystem::append(const ConstraintSystem& other) {
    if (!(mod_ == other.mod_)) throw Error(Errc::modulus_mismatch, "cannot join systems over different moduli");
    widen(other.lo_, other.hi_);
    for (const auto& row : other.rows_) {
        ConstraintRow r{std::vector<Elem>(num_vars(), 0), row.rhs};
        std::copy(row.coeffs.begin(), row.coeffs.end(), r.coeffs.begin() + (other.lo_ - lo_));
        rows_.push_back(std::move(r));
    }
}

ConstraintSystem ConstraintSystem::projected(std::uint64_t d) const {
    if (d < 2 || mod_.value() % d != 0)
        throw Error(Errc::invalid_argument, std::to_string(d) + " is not a divisor >= 2 of " + std::to_string(mod_.value()));
    ConstraintSystem out(Modulus(d), lo_, hi_);
    for (const auto& row : rows_) {
        ConstraintRow r{row.coeffs, row.rhs % d};
        bool nonzero = r.rhs != 0;
        for (auto& c : r.coeffs) nonzero |= ((c %= d) != 0);
        if (nonzero) out.rows_.push_back(std::move(r));
    }
    return out;
}

// --------------------------------------------------------------- counting

namespace {

// Exponent e with #solutions = p^e over Z_{p^k}, or nullopt when the system
// is inconsistent. Pivots are taken at minimal p-adic valuation, so each
// pivot row is solvable iff its rhs is divisible by p^v, independently of
// the other variables.
std::optional<std::uint64_t> count_exponent(const ConstraintSystem& sys, const PrimePower& pp) {
    const std::size_t nvars = sys.num_vars();
    const Modulus ring(pp.pk);
    std::vector<std::vector<Elem>> a;
    std::vector<Elem> b;
    for (const auto& row : sys.rows()) {
        std::vector<Elem> r(nvars);
        for (std::size_t i = 0; i < nvars; ++i) r[i] = row.coeffs[i] % pp.pk;
        a.push_back(std::move(r));
        b.push_back(row.rhs % pp.pk);
    }
    const std::size_t nrows = a.size();
    std::vector<bool> row_done(nrows, false), col_done(nvars, false);
    std::vector<std::uint64_t> ppow(pp.k + 1, 1);
    for (unsigned i = 1; i <= pp.k; ++i) ppow[i] = ppow[i - 1] * pp.p;

    std::uint64_t exponent = 0;
    std::size_t pivots = 0;
    while (true) {
        unsigned best = pp.k;
        std::size_t pr = 0, pc = 0;
        for (std::size_t i = 0; i < nrows && best > 0; ++i) {
            if (row_done[i]) continue;
            for (std::size_t j = 0; j < nvars; ++j) {
                if (col_done[j] || a[i][j] == 0) continue;
                unsigned v = valuation(a[i][j], pp.p, pp.k);
                if (v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                    if (v == 0) break;
                }
            }
        }
        if (best == pp.k) break;

        const std::uint64_t pv = ppow[best];
        const Elem unit_inv = mod_inverse(a[pr][pc] / pv, pp.pk);
        for (std::size_t j = 0; j < nvars; ++j) a[pr][j] = ring.mul(a[pr][j], unit_inv);
        b[pr] = ring.mul(b[pr], unit_inv);

        for (std::size_t i = 0; i < nrows; ++i) {
            if (row_done[i] || i == pr || a[i][pc] == 0) continue;
            const Elem t = a[i][pc] / pv;
            for (std::size_t j = 0; j < nvars; ++j)
                if (a[pr][j] != 0) a[i][j] = ring.sub(a[i][j], ring.mul(t, a[pr][j]));
            b[i] = ring.sub(b[i], ring.mul(t, b[pr]));
        }
        row_done[pr] = true;
        col_done[pc] = true;
        ++pivots;
        if (b[pr] % pv != 0) return std::nullopt;
        exponent += best;
    }
    for (std::size_t i = 0; i < nrows; ++i)
        if (!row_done[i] && b[i] != 0) return std::nullopt;
    return exponent + static_cast<std::uint64_t>(pp.k) * (nvars - pivots);
}

}  // namespace

BigInt count_solutions(const ConstraintSystem& sys) {
    BigInt total = 1;
    for (const auto& pp : sys.modulus().factors()) {
        auto e = count_exponent(sys, pp);
        if (!e) return 0;
        total *= mp::pow(BigInt(pp.p), static_cast<unsigned>(*e));
    }
    return total;
}

// ------------------------------------------------------------ ExactMeasure

ExactMeasure::ExactMeasure(BigInt numerator, std::uint64_t base, std::uint64_t exponent)
    : num_(std::move(numerator)), base_(base), exp_(exponent) {
    if (base_ < 2) throw Error(Errc::invalid_argument, "measure base must be >= 2");
    if (num_ < 0) throw Error(Errc::invalid_argument, "measure numerator must be nonnegative");
}

BigInt ExactMeasure::denominator() const { return mp::pow(BigInt(base_), static_cast<unsigned>(exp_)); }

std::optional<BigInt> ExactMeasure::numerator_at(std::uint64_t e) const {
    if (e >= exp_) return num_ * mp::pow(BigInt(base_), static_cast<unsigned>(e - exp_));
    BigInt div = mp::pow(BigInt(base_), static_cast<unsigned>(exp_ - e));
    if (num_ % div != 0) return std::nullopt;
    return num_ / div;
}

BigRational ExactMeasure::to_rational() const { return BigRational(num_, denominator()); }

std::string ExactMeasure::render() const {
    BigRational r = to_rational();
    if (mp::numerator(r) == 0) return "0";
    if (mp::denominator(r) == 1) return mp::numerator(r).str();
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

bool ExactMeasure::operator==(const ExactMeasure& o) const { return num_ * o.denominator() == o.num_ * denominator(); }

bool ExactMeasure::operator<(const ExactMeasure& o) const { return num_ * o.denominator() < o.num_ * denominator(); }

ExactMeasure operator*(const ExactMeasure& a, const ExactMeasure& b) {
    if (a.base_ == b.base_) return ExactMeasure(a.num_ * b.num_, a.base_, a.exp_ + b.exp_);
    if (gcd(a.base_, b.base_) != 1)
        throw Error(Errc::invalid_argument, "cannot multiply measures over non-coprime bases");
    unsigned __int128 base = static_cast<unsigned __int128>(a.base_) * b.base_;
    if (base > UINT64_MAX) throw Error(Errc::invalid_argument, "product base overflows 64 bits");
    const std::uint64_t e = std::max(a.exp_, b.exp_);
    return ExactMeasure(*a.numerator_at(e) * *b.numerator_at(e), static_cast<std::uint64_t>(base), e);
}

ExactMeasure operator+(const ExactMeasure& a, const ExactMeasure& b) {
    if (a.base_ != b.base_) throw Error(Errc::invalid_argument, "cannot add measures over different bases");
    const std::uint64_t e = std::max(a.exp_, b.exp_);
    return ExactMeasure(*a.numerator_at(e) + *b.numerator_at(e), a.base_, e);
}

ExactMeasure abs_diff(const ExactMeasure& a, const ExactMeasure& b) {
    if (a.base_ != b.base_) throw Error(Errc::invalid_argument, "cannot subtract measures over different bases");
    const std::uint64_t e = std::max(a.exp_, b.exp_);
    BigInt x = *a.numerator_at(e), y = *b.numerator_at(e);
    return ExactMeasure(x >= y ? BigInt(x - y) : BigInt(y - x), a.base_, e);
}

// ------------------------------------------------------------- operations

ExactMeasure cylinder_measure(const Cylinder& U, const Modulus& m) {
    U.check_symbols(m);
    return ExactMeasure(1, m.value(), U.length());
}

ExactMeasure system_measure(const ConstraintSystem& sys) {
    return ExactMeasure(count_solutions(sys), sys.modulus().value(), sys.num_vars());
}

namespace {

// Rows sum_i g_i x_{i+j} = word_j for every coordinate j of the cylinder.
void add_cylinder_rows(ConstraintSystem& sys, const LocalRule& g, const Cylinder& c) {
    for (std::size_t t = 0; t < c.length(); ++t) {
        std::int64_t j = c.start() + static_cast<std::int64_t>(t);
        sys.add_equation(j + g.left(), g.coeffs(), c.word()[t]);
    }
}

}  // namespace

ConstraintSystem preimage_system(const LocalRule& rule, std::int64_t n, const Cylinder& U) {
    U.check_symbols(rule.modulus());
    LocalRule g = iterate_rule(rule, n);
    ConstraintSystem sys(rule.modulus());
    add_cylinder_rows(sys, g, U);
    return sys;
}

ExactMeasure correlation(const LocalRule& rule, std::int64_t n, const Cylinder& U, const Cylinder& V) {
    ConstraintSystem sys = preimage_system(rule, n, U);
    sys.append(ConstraintSystem::diagonal(rule.modulus(), V));
    return system_measure(sys);
}

ExactMeasure correlation_multi(const LocalRule& rule, std::span<const std::int64_t> gaps,
                               std::span<const Cylinder> cylinders) {
    if (cylinders.size() != gaps.size() + 1)
        throw Error(Errc::invalid_argument, "need exactly one more cylinder than gaps");
    ConstraintSystem sys = ConstraintSystem::diagonal(rule.modulus(), cylinders[0]);
    std::int64_t cumulative = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i] < 1) throw Error(Errc::invalid_argument, "gaps must be >= 1");
        cumulative += gaps[i];
        sys.append(preimage_system(rule, cumulative, cylinders[i + 1]));
    }
    return system_measure(sys);
}

std::vector<ExactMeasure> factor_correlation(const LocalRule& rule, std::int64_t n, const Cylinder& U,
                                             const Cylinder& V) {
    U.check_symbols(rule.modulus());
    V.check_symbols(rule.modulus());
    if (n < 0) require_jp_map(rule);
    std::vector<ExactMeasure> out;
    for (const auto& pp : rule.modulus().factors()) {
        LocalRule rp = project_rule(rule, pp.pk);
        out.push_back(correlation(rp, n, U.reduced(pp.pk), V.reduced(pp.pk)));
    }
    return out;
}

// ------------------------------------------------------ Bernoulli partitions

namespace {

struct Cell {
    ConstraintSystem sys;
    ExactMeasure mu;
};

class JoinEnumerator {
public:
    JoinEnumerator(const LocalRule& rule, std::int64_t ell, std::vector<std::int64_t> ks, std::uint64_t budget)
        : mod_(rule.modulus()), ell_(ell), budget_(budget) {
        // T^k C = {x : T^{-k} x in C}, so level k is built from f^{-k}.
        for (auto k : ks) levels_.push_back(iterate_rule(rule, -k));
    }

    std::vector<Cell> run() {
        ConstraintSystem root(mod_);
        std::vector<Elem> word(static_cast<std::size_t>(2 * ell_ + 1), 0);
        descend(0, root, word);
        return std::move(cells_);
    }

private:
    void descend(std::size_t level, const ConstraintSystem& sys, std::vector<Elem>& word) {
        if (level == levels_.size()) {
            cells_.push_back({sys, system_measure(sys)});
            return;
        }
        std::fill(word.begin(), word.end(), 0);
        while (true) {
            ConstraintSystem next = sys;
            add_cylinder_rows(next, levels_[level], Cylinder(-ell_, word));
            if (++visited_ > budget_)
                throw Error(Errc::budget_exceeded, "cell enumeration exceeded budget of " + std::to_string(budget_));
            if (count_solutions(next) != 0) {
                std::vector<Elem> inner(word.size());
                descend(level + 1, next, inner);
            }
            // odometer over Z_m^{2 ell + 1}
            std::size_t i = 0;
            while (i < word.size() && ++word[i] == mod_.value()) word[i++] = 0;
            if (i == word.size()) break;
        }
    }

    Modulus mod_;
    std::int64_t ell_;
    std::uint64_t budget_;
    std::uint64_t visited_ = 0;
    std::vector<LocalRule> levels_;
    std::vector<Cell> cells_;
};

}  // namespace

ExactMeasure independence_defect(const LocalRule& rule, std::int64_t ell, std::int64_t n, std::int64_t N,
                                 std::uint64_t budget) {
    if (ell < 0 || n < 0 || N < 0) throw Error(Errc::invalid_argument, "ell, n and N must be nonnegative");
    if (2 * ell < rule.right() - rule.left())
        throw Error(Errc::invalid_argument, "partition on [-ell, ell] is not a generator: need 2*ell >= r - l");
    require_jp_map(rule);

    std::vector<std::int64_t> past, future;
    for (std::int64_t k = -n; k <= 0; ++k) past.push_back(k);
    for (std::int64_t k = N; k <= N + n; ++k) future.push_back(k);

    auto P = JoinEnumerator(rule, ell, past, budget).run();
    auto Q = JoinEnumerator(rule, ell, future, budget).run();
    if (static_cast<unsigned __int128>(P.size()) * Q.size() > budget)
        throw Error(Errc::budget_exceeded, std::to_string(P.size()) + " x " + std::to_string(Q.size()) +
                                               " cell pairs exceed budget of " + std::to_string(budget));

    ExactMeasure total(0, rule.modulus().value(), 0);
    for (const auto& C : P)
        for (const auto& D : Q) {
            ConstraintSystem joint = C.sys;
            joint.append(D.sys);
            total = total + abs_diff(system_measure(joint), C.mu * D.mu);
        }
    return total;
}

}  // namespace linca
