#include <recurrence_lab/torus.hpp>

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace reclab {

namespace {

void require_same_backend(Backend a, Backend b) {
    if (a != b) throw std::invalid_argument("torus: backend mismatch");
}

uint128 wrap_mul(uint128 w, BigInt const& c) {
    // c * w mod 2^128. Reduce c first; sign handled by wrapping negation.
    BigInt cm = c % (BigInt(1) << 128);
    bool neg = cm < 0;
    if (neg) cm = -cm;
    uint128 cw = to_uint128(cm);
    uint128 r = static_cast<uint128>(to_uint128((BigInt(cw) * BigInt(w)) & ((BigInt(1) << 128) - 1)));
    return neg ? static_cast<uint128>(0) - r : r;
}

}  // namespace

TorusScalar TorusScalar::from_rational(Rat const& r, Backend b) {
    TorusScalar t;
    t.backend_ = b;
    Rat f = rat_frac(r);
    if (b == Backend::Exact) {
        t.frac_ = f;
    } else {
        // floor(f * 2^128)
        BigInt num = numerator(f) << 128;
        t.word_ = to_uint128(num / denominator(f));
    }
    return t;
}

Rat TorusScalar::as_rational() const {
    if (backend_ == Backend::Exact) return frac_;
    return Rat(to_bigint(word_), BigInt(1) << 128);
}

uint128 TorusScalar::word() const {
    if (backend_ != Backend::Fixed) throw std::logic_error("word(): exact-backend scalar");
    return word_;
}

TorusScalar TorusScalar::operator+(TorusScalar const& o) const {
    require_same_backend(backend_, o.backend_);
    TorusScalar t;
    t.backend_ = backend_;
    if (backend_ == Backend::Exact)
        t.frac_ = rat_frac(frac_ + o.frac_);
    else
        t.word_ = word_ + o.word_;
    return t;
}

TorusScalar TorusScalar::operator-(TorusScalar const& o) const {
    require_same_backend(backend_, o.backend_);
    TorusScalar t;
    t.backend_ = backend_;
    if (backend_ == Backend::Exact)
        t.frac_ = rat_frac(frac_ - o.frac_);
    else
        t.word_ = word_ - o.word_;
    return t;
}

TorusScalar TorusScalar::operator-() const {
    TorusScalar t;
    t.backend_ = backend_;
    if (backend_ == Backend::Exact)
        t.frac_ = frac_ == 0 ? Rat(0) : Rat(1) - frac_;
    else
        t.word_ = static_cast<uint128>(0) - word_;
    return t;
}

TorusScalar TorusScalar::scaled(BigInt const& c) const {
    TorusScalar t;
    t.backend_ = backend_;
    if (backend_ == Backend::Exact)
        t.frac_ = rat_frac(Rat(c) * frac_);
    else
        t.word_ = wrap_mul(word_, c);
    return t;
}

TorusScalar TorusScalar::divided_by(BigInt const& k) const {
    if (k <= 0) throw std::invalid_argument("divided_by: k must be positive");
    TorusScalar t;
    t.backend_ = backend_;
    if (backend_ == Backend::Exact)
        t.frac_ = frac_ / Rat(k);
    else
        t.word_ = to_uint128(to_bigint(word_) / k);
    return t;
}

bool TorusScalar::operator==(TorusScalar const& o) const {
    if (backend_ != o.backend_) return false;
    return backend_ == Backend::Exact ? frac_ == o.frac_ : word_ == o.word_;
}

bool TorusScalar::is_zero() const {
    return backend_ == Backend::Exact ? frac_ == 0 : word_ == 0;
}

long TorusScalar::cell_index(long r) const {
    if (r < 1) throw std::invalid_argument("cell_index: r must be >= 1");
    if (backend_ == Backend::Exact) {
        BigInt idx = (BigInt(r) * numerator(frac_)) / denominator(frac_);
        return static_cast<long>(idx);
    }
    BigInt idx = (BigInt(r) * to_bigint(word_)) >> 128;
    return static_cast<long>(idx);
}

double TorusScalar::to_double() const {
    if (backend_ == Backend::Exact)
        return static_cast<double>(numerator(frac_)) / static_cast<double>(denominator(frac_));
    return std::ldexp(static_cast<double>(static_cast<uint64_t>(word_ >> 64)), -64) +
           std::ldexp(static_cast<double>(static_cast<uint64_t>(word_)), -128);
}

std::string TorusScalar::to_string() const {
    std::ostringstream os;
    if (backend_ == Backend::Exact)
        os << numerator(frac_) << "/" << denominator(frac_);
    else
        os << "0x" << uint128_to_hex(word_) << "/2^128";
    return os.str();
}

Rat circle_norm(TorusScalar const& t) {
    Rat f = t.as_rational();
    Rat other = Rat(1) - f;
    if (f == 0) return Rat(0);
    return f < other ? f : other;
}

TorusPoint::TorusPoint(std::vector<TorusScalar> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("TorusPoint: dim must be >= 1");
    for (auto const& c : coords_) require_same_backend(coords_.front().backend(), c.backend());
}

TorusPoint TorusPoint::zero(int dim, Backend b) {
    return TorusPoint(std::vector<TorusScalar>(static_cast<size_t>(dim), TorusScalar::zero(b)));
}

TorusPoint TorusPoint::operator+(TorusPoint const& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("TorusPoint: dimension mismatch");
    std::vector<TorusScalar> c;
    c.reserve(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i) c.push_back(coords_[i] + o.coords_[i]);
    return TorusPoint(std::move(c));
}

TorusPoint TorusPoint::operator-(TorusPoint const& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("TorusPoint: dimension mismatch");
    std::vector<TorusScalar> c;
    c.reserve(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i) c.push_back(coords_[i] - o.coords_[i]);
    return TorusPoint(std::move(c));
}

bool TorusPoint::operator==(TorusPoint const& o) const {
    return coords_ == o.coords_;
}

Rat torus_distance(TorusPoint const& x, TorusPoint const& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("torus_distance: dimension mismatch");
    require_same_backend(x.backend(), y.backend());
    Rat best = 0;
    for (int i = 0; i < x.dim(); ++i) {
        Rat d = circle_norm(x.coord(i) - y.coord(i));
        if (d > best) best = d;
    }
    return best;
}

namespace {

// Partial quotient a_k (k >= 1) of the named constant's fractional part.
// golden - 1 = [0;1,1,1,...]; sqrt(2) - 1 = [0;2,2,2,...];
// e - 2 = [0;1,2,1,1,4,1,1,6,...]  (a_k = 2(k+1)/3 when k = 2 mod 3).
BigInt cf_term(SurrogateName name, long k, std::vector<long> const& custom) {
    switch (name) {
        case SurrogateName::Golden: return 1;
        case SurrogateName::Sqrt2: return 2;
        case SurrogateName::EFrac: return (k % 3 == 2) ? BigInt(2 * ((k + 1) / 3)) : BigInt(1);
        case SurrogateName::CustomCF: {
            if (k >= static_cast<long>(custom.size())) return 0;  // expansion exhausted
            long a = custom[static_cast<size_t>(k)];
            if (a < 1) throw std::invalid_argument("custom-cf: partial quotients must be >= 1");
            return a;
        }
    }
    throw std::logic_error("cf_term: unknown surrogate");
}

}  // namespace

std::optional<SurrogateName> surrogate_from_string(std::string const& s) {
    if (s == "sqrt2") return SurrogateName::Sqrt2;
    if (s == "golden") return SurrogateName::Golden;
    if (s == "e-frac" || s == "efrac") return SurrogateName::EFrac;
    if (s == "custom-cf") return SurrogateName::CustomCF;
    return std::nullopt;
}

std::string surrogate_to_string(SurrogateName n) {
    switch (n) {
        case SurrogateName::Sqrt2: return "sqrt2";
        case SurrogateName::Golden: return "golden";
        case SurrogateName::EFrac: return "e-frac";
        case SurrogateName::CustomCF: return "custom-cf";
    }
    return "?";
}

std::pair<BigInt, BigInt> surrogate_convergent(SurrogateName name, BigInt const& min_den,
                                               std::vector<long> const& cf_terms) {
    if (name == SurrogateName::CustomCF) {
        if (cf_terms.empty() || cf_terms[0] != 0)
            throw std::invalid_argument("custom-cf: expansion must start with 0 (value in [0,1))");
    }
    BigInt p_prev = 1, p = 0;  // h_{-1}, h_0 for [0; a1, a2, ...]
    BigInt q_prev = 0, q = 1;
    for (long k = 1;; ++k) {
        BigInt a = cf_term(name, k, cf_terms);
        if (a == 0) break;  // finite expansion: value is exactly p/q
        BigInt pn = a * p + p_prev;
        BigInt qn = a * q + q_prev;
        p_prev = p; p = pn;
        q_prev = q; q = qn;
        if (q >= min_den) break;
    }
    return {p, q};
}

TorusScalar irrational_surrogate(SurrogateName name, Backend b, std::vector<long> const& cf_terms) {
    if (b == Backend::Exact) {
        auto [p, q] = surrogate_convergent(name, BigInt(1) << 64, cf_terms);
        return TorusScalar::from_rational(Rat(p, q), Backend::Exact);
    }
    // Truncate the real value: a convergent with q >= 2^200 approximates to
    // error < 2^-400, far below half an ulp of the 128-bit word for these
    // badly-approximable constants.
    auto [p, q] = surrogate_convergent(name, BigInt(1) << 200, cf_terms);
    return TorusScalar::from_rational(Rat(p, q), Backend::Fixed);
}

}  // namespace reclab
