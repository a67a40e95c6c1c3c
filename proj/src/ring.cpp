#include "linca/ring.hpp"

#include "linca/error.hpp"

#include <sstream>

namespace linca {

std::vector<PrimePower> factorize(std::uint64_t m) {
    if (m < 2) throw Error(Errc::invalid_argument, "modulus must be >= 2, got " + std::to_string(m));
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        PrimePower pp{p, 0, 1};
        while (m % p == 0) {
            m /= p;
            ++pp.k;
            pp.pk *= p;
        }
        out.push_back(pp);
    }
    if (m > 1) out.push_back({m, 1, m});
    return out;
}

Modulus::Modulus(std::uint64_t m) : m_(m) {
    if (m > kMaxModulus)
        throw Error(Errc::invalid_argument, "modulus " + std::to_string(m) + " exceeds 2^32-1");
    factors_ = factorize(m);
}

Elem Modulus::reduce(std::int64_t x) const noexcept {
    auto sm = static_cast<std::int64_t>(m_);
    std::int64_t r = x % sm;
    return static_cast<Elem>(r < 0 ? r + sm : r);
}

Elem Modulus::add(Elem a, Elem b) const noexcept {
    Elem s = a + b;
    return s >= m_ ? s - m_ : s;
}

Elem Modulus::sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + m_ - b; }

Elem Modulus::mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % m_);
}

Elem Modulus::pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = 1 % m_;
    Elem base = a % m_;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

bool Modulus::is_unit(Elem a) const noexcept { return gcd(a, m_) == 1; }

std::string Modulus::factor_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << '*';
        os << factors_[i].p;
        if (factors_[i].k > 1) os << '^' << factors_[i].k;
    }
    return os.str();
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Elem mod_inverse(Elem a, std::uint64_t m) {
    // Extended Euclid on signed 128-bit to avoid overflow for m near 2^32.
    __int128 old_r = static_cast<__int128>(a % m), r = static_cast<__int128>(m);
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw Error(Errc::invalid_argument, std::to_string(a) + " is not a unit modulo " + std::to_string(m));
    __int128 sm = static_cast<__int128>(m);
    __int128 v = old_s % sm;
    if (v < 0) v += sm;
    return static_cast<Elem>(v);
}

Elem mod_inverse(Elem a, const Modulus& m) { return mod_inverse(a, m.value()); }

Elem crt_combine(std::span<const Elem> residues, const Modulus& m) {
    const auto& fs = m.factors();
    if (residues.size() != fs.size())
        throw Error(Errc::invalid_argument, "crt_combine: expected " + std::to_string(fs.size()) +
                                                " residues, got " + std::to_string(residues.size()));
    Elem x = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::uint64_t pk = fs[i].pk;
        if (residues[i] >= pk)
            throw Error(Errc::invalid_argument, "crt_combine: residue not reduced modulo " + std::to_string(pk));
        std::uint64_t cofactor = m.value() / pk;
        Elem basis = m.mul(cofactor, mod_inverse(cofactor % pk, pk));
        x = m.add(x, m.mul(basis, residues[i]));
    }
    return x;
}

std::uint64_t euler_phi(std::uint64_t m) {
    if (m == 1) return 1;
    std::uint64_t phi = 1;
    for (const auto& f : factorize(m)) phi *= (f.pk / f.p) * (f.p - 1);
    return phi;
}

unsigned valuation(Elem a, std::uint64_t p, unsigned k) noexcept {
    unsigned v = 0;
    while (a != 0 && a % p == 0 && v < k) {
        a /= p;
        ++v;
    }
    return a == 0 ? k : v;
}

}  // namespace linca
