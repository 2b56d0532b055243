#include <recurrence_lab/integer_sets.hpp>
#include <recurrence_lab/spec_text.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace reclab {

Json rat_to_json(Rat const& r) {
    return Json{{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

Rat rat_from_json(Json const& j) {
    return Rat(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

Json scalar_to_json(TorusScalar const& t) {
    if (t.backend() == Backend::Exact) {
        Rat r = t.as_rational();
        return Json{{"backend", "exact"}, {"num", numerator(r).str()}, {"den", denominator(r).str()}};
    }
    return Json{{"backend", "fixed"}, {"word", uint128_to_hex(t.word())}};
}

TorusScalar scalar_from_json(Json const& j) {
    std::string b = j.at("backend").get<std::string>();
    if (b == "exact")
        return TorusScalar::from_rational(
            Rat(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>())),
            Backend::Exact);
    if (b == "fixed") return TorusScalar::from_word(uint128_from_hex(j.at("word").get<std::string>()));
    throw std::invalid_argument("scalar_from_json: unknown backend");
}

namespace {

std::vector<long long> normalized(std::vector<long long> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

long long poly_eval(std::vector<long long> const& coeffs, long long m) {
    BigInt acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * m + coeffs[i];
    if (acc > std::numeric_limits<long long>::max() || acc < std::numeric_limits<long long>::min())
        throw std::overflow_error("poly_image: value overflow");
    return static_cast<long long>(acc);
}

// Past this argument the polynomial is increasing (Cauchy-style bound on p').
long long poly_monotone_from(std::vector<long long> const& coeffs) {
    long long d = static_cast<long long>(coeffs.size()) - 1;
    long long lead = coeffs.back();
    long long bound = 1;
    for (size_t i = 0; i + 1 < coeffs.size(); ++i) {
        long long c = std::abs(coeffs[i]) * static_cast<long long>(i + 1);
        bound = std::max(bound, 2 + 2 * c / (lead * std::max<long long>(1, d)));
    }
    return bound;
}

}  // namespace

bool is_prime_u64(unsigned long long n) {
    if (n < 2) return false;
    for (unsigned long long p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    auto mulmod = [](unsigned long long a, unsigned long long b, unsigned long long m) {
        return static_cast<unsigned long long>(static_cast<uint128>(a) * b % m);
    };
    auto powmod = [&](unsigned long long a, unsigned long long e, unsigned long long m) {
        unsigned long long r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    unsigned long long d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        unsigned long long x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

SpecPtr IntegerSetSpec::all() {
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::All;
    return s;
}

SpecPtr IntegerSetSpec::explicit_set(std::vector<long long> elements) {
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Explicit;
    for (long long e : elements)
        if (e < 1) throw std::invalid_argument("explicit: elements must be positive");
    s->ints_ = normalized(std::move(elements));
    return s;
}

SpecPtr IntegerSetSpec::bohr(std::vector<TorusScalar> alphas, Rat eps) {
    if (alphas.empty()) throw std::invalid_argument("bohr: empty frequency list");
    if (eps <= 0 || eps >= Rat(1, 2)) throw std::invalid_argument("bohr: eps must lie in (0, 1/2)");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Bohr;
    s->alphas_ = std::move(alphas);
    s->eps_ = std::move(eps);
    return s;
}

SpecPtr IntegerSetSpec::power_bohr(int degree, TorusScalar beta, Rat eps, bool outside) {
    if (degree < 1) throw std::invalid_argument("powerbohr: degree must be >= 1");
    if (eps <= 0 || eps >= Rat(1, 2)) throw std::invalid_argument("powerbohr: eps must lie in (0, 1/2)");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::PowerBohr;
    s->degree_ = degree;
    s->alphas_ = {std::move(beta)};
    s->eps_ = std::move(eps);
    s->outside_ = outside;
    return s;
}

SpecPtr IntegerSetSpec::difference(SpecPtr base, long long base_window) {
    if (!base) throw std::invalid_argument("difference: null base");
    if (base_window <= 0) {
        if (base->kind() == SetKind::Explicit && !base->ints().empty())
            base_window = base->ints().back();
        else
            throw std::invalid_argument("difference: base_window required for non-explicit base");
    }
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Difference;
    s->a_ = std::move(base);
    s->aux_ = base_window;
    return s;
}

SpecPtr IntegerSetSpec::ip(std::vector<long long> generators, int depth) {
    auto norm = normalized(std::move(generators));
    if (norm.empty()) throw std::invalid_argument("ip: empty generator list");
    for (long long g : norm)
        if (g < 1) throw std::invalid_argument("ip: generators must be positive");
    if (depth < 1) throw std::invalid_argument("ip: depth must be >= 1");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::IP;
    s->ints_ = std::move(norm);
    s->degree_ = depth;
    return s;
}

SpecPtr IntegerSetSpec::poly_image(std::vector<long long> coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.size() < 2 || coeffs.back() <= 0)
        throw std::invalid_argument("poly: need positive leading coefficient and degree >= 1");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::PolyImage;
    s->ints_ = std::move(coeffs);
    return s;
}

SpecPtr IntegerSetSpec::primes(long long offset) {
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Primes;
    s->aux_ = offset;
    return s;
}

SpecPtr IntegerSetSpec::powers(long long base) {
    if (base < 2) throw std::invalid_argument("powers: base must be >= 2");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Powers;
    s->aux_ = base;
    return s;
}

SpecPtr IntegerSetSpec::set_union(SpecPtr a, SpecPtr b) {
    if (!a || !b) throw std::invalid_argument("union: null child");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Union;
    s->a_ = std::move(a);
    s->b_ = std::move(b);
    return s;
}

SpecPtr IntegerSetSpec::set_intersection(SpecPtr a, SpecPtr b) {
    if (!a || !b) throw std::invalid_argument("intersect: null child");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Intersection;
    s->a_ = std::move(a);
    s->b_ = std::move(b);
    return s;
}

SpecPtr IntegerSetSpec::complement_within_window(SpecPtr a) {
    if (!a) throw std::invalid_argument("complement: null child");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::ComplementWithin;
    s->a_ = std::move(a);
    return s;
}

SpecPtr IntegerSetSpec::dilate(SpecPtr a, long long factor) {
    if (!a) throw std::invalid_argument("dilate: null child");
    if (factor < 1) throw std::invalid_argument("dilate: factor must be >= 1");
    auto s = std::shared_ptr<IntegerSetSpec>(new IntegerSetSpec());
    s->kind_ = SetKind::Dilate;
    s->a_ = std::move(a);
    s->aux_ = factor;
    return s;
}

bool IntegerSetSpec::membership(long long n) const {
    if (n < 1) throw std::invalid_argument("membership: n must be >= 1");
    switch (kind_) {
        case SetKind::All:
            return true;
        case SetKind::Explicit:
            return std::binary_search(ints_.begin(), ints_.end(), n);
        case SetKind::Bohr: {
            for (auto const& a : alphas_)
                if (circle_norm(a.scaled(n)) >= eps_) return false;
            return true;
        }
        case SetKind::PowerBohr: {
            BigInt p = 1;
            for (int i = 0; i < degree_; ++i) p *= n;
            Rat norm = circle_norm(alphas_[0].scaled(p));
            return outside_ ? norm > eps_ : norm < eps_;
        }
        case SetKind::Difference: {
            auto base = a_->enumerate(aux_);
            std::set<long long> look(base.begin(), base.end());
            for (long long b : base)
                if (b + n <= aux_ && look.count(b + n)) return true;
            return false;
        }
        case SetKind::IP: {
            int depth = std::min<int>(degree_, static_cast<int>(ints_.size()));
            std::vector<char> dp(static_cast<size_t>(n) + 1, 0);
            dp[0] = 1;
            for (int i = 0; i < depth; ++i) {
                long long g = ints_[static_cast<size_t>(i)];
                for (long long v = n; v >= g; --v)
                    if (dp[static_cast<size_t>(v - g)]) dp[static_cast<size_t>(v)] = 1;
            }
            return dp[static_cast<size_t>(n)] != 0;
        }
        case SetKind::PolyImage: {
            long long stop = poly_monotone_from(ints_);
            for (long long m = 1;; ++m) {
                long long v = poly_eval(ints_, m);
                if (v == n) return true;
                if (m >= stop && v > n) return false;
            }
        }
        case SetKind::Primes: {
            long long p = n - aux_;
            return p >= 2 && is_prime_u64(static_cast<unsigned long long>(p));
        }
        case SetKind::Powers: {
            long long v = aux_;
            while (v < n) v *= aux_;
            return v == n;
        }
        case SetKind::Union:
            return a_->membership(n) || b_->membership(n);
        case SetKind::Intersection:
            return a_->membership(n) && b_->membership(n);
        case SetKind::ComplementWithin:
            return !a_->membership(n);
        case SetKind::Dilate:
            return n % aux_ == 0 && a_->membership(n / aux_);
    }
    throw std::logic_error("membership: unknown kind");
}

std::vector<long long> IntegerSetSpec::enumerate(long long n_max) const {
    if (n_max < 1) throw std::invalid_argument("enumerate: window must be >= 1");
    std::vector<long long> out;
    switch (kind_) {
        case SetKind::All:
            out.reserve(static_cast<size_t>(n_max));
            for (long long n = 1; n <= n_max; ++n) out.push_back(n);
            return out;
        case SetKind::Explicit:
            for (long long e : ints_)
                if (e <= n_max) out.push_back(e);
            return out;
        case SetKind::Bohr:
        case SetKind::Primes:
            for (long long n = 1; n <= n_max; ++n)
                if (membership(n)) out.push_back(n);
            return out;
        case SetKind::PowerBohr: {
            // n^s beta by repeated scaling; exact within the backend
            for (long long n = 1; n <= n_max; ++n) {
                BigInt p = 1;
                for (int i = 0; i < degree_; ++i) p *= n;
                Rat norm = circle_norm(alphas_[0].scaled(p));
                if (outside_ ? norm > eps_ : norm < eps_) out.push_back(n);
            }
            return out;
        }
        case SetKind::Difference: {
            auto base = a_->enumerate(aux_);
            std::set<long long> diffs;
            for (size_t i = 0; i < base.size(); ++i)
                for (size_t j = i + 1; j < base.size(); ++j) {
                    long long d = base[j] - base[i];
                    if (d >= 1 && d <= n_max) diffs.insert(d);
                }
            return std::vector<long long>(diffs.begin(), diffs.end());
        }
        case SetKind::IP: {
            int depth = std::min<int>(degree_, static_cast<int>(ints_.size()));
            std::vector<long long> gens(ints_.begin(), ints_.begin() + depth);
            return ip_sums(gens, n_max);
        }
        case SetKind::PolyImage: {
            long long stop = poly_monotone_from(ints_);
            std::set<long long> vals;
            for (long long m = 1;; ++m) {
                long long v = poly_eval(ints_, m);
                if (v >= 1 && v <= n_max) vals.insert(v);
                if (m >= stop && v > n_max) break;
            }
            return std::vector<long long>(vals.begin(), vals.end());
        }
        case SetKind::Powers: {
            for (long long v = aux_; v <= n_max; v *= aux_) out.push_back(v);
            return out;
        }
        case SetKind::Union: {
            auto ea = a_->enumerate(n_max), eb = b_->enumerate(n_max);
            std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
            return out;
        }
        case SetKind::Intersection: {
            auto ea = a_->enumerate(n_max), eb = b_->enumerate(n_max);
            std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
            return out;
        }
        case SetKind::ComplementWithin: {
            auto ea = a_->enumerate(n_max);
            std::set<long long> in(ea.begin(), ea.end());
            for (long long n = 1; n <= n_max; ++n)
                if (!in.count(n)) out.push_back(n);
            return out;
        }
        case SetKind::Dilate: {
            long long child_window = n_max / aux_;
            if (child_window < 1) return out;
            for (long long m : a_->enumerate(child_window)) out.push_back(m * aux_);
            return out;
        }
    }
    throw std::logic_error("enumerate: unknown kind");
}

bool IntegerSetSpec::depth_truncated() const {
    switch (kind_) {
        case SetKind::IP:
            return degree_ < static_cast<int>(ints_.size());
        case SetKind::Difference:
        case SetKind::ComplementWithin:
        case SetKind::Dilate:
            return a_->depth_truncated();
        case SetKind::Union:
        case SetKind::Intersection:
            return a_->depth_truncated() || b_->depth_truncated();
        default:
            return false;
    }
}

std::vector<long long> ip_sums(std::vector<long long> const& generators, long long n_max) {
    auto gens = normalized(generators);
    if (gens.empty()) throw std::invalid_argument("ip_sums: empty generator list");
    std::vector<char> dp(static_cast<size_t>(n_max) + 1, 0);
    dp[0] = 1;
    for (long long g : gens) {
        if (g < 1) throw std::invalid_argument("ip_sums: generators must be positive");
        if (g > n_max) continue;
        for (long long v = n_max; v >= g; --v)
            if (dp[static_cast<size_t>(v - g)]) dp[static_cast<size_t>(v)] = 1;
    }
    std::vector<long long> out;
    for (long long v = 1; v <= n_max; ++v)
        if (dp[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

long long syndeticity_constant(IntegerSetSpec const& spec, long long n_max) {
    auto xs = spec.enumerate(n_max);
    if (xs.empty()) throw std::domain_error("syndeticity_constant: set empty on window");
    long long best = xs.front();  // gap from 0 to the first element
    for (size_t i = 1; i < xs.size(); ++i) best = std::max(best, xs[i] - xs[i - 1]);
    return best;
}

namespace {

char const* kind_name(SetKind k) {
    switch (k) {
        case SetKind::All: return "all";
        case SetKind::Explicit: return "explicit";
        case SetKind::Bohr: return "bohr";
        case SetKind::PowerBohr: return "powerbohr";
        case SetKind::Difference: return "diff";
        case SetKind::IP: return "ip";
        case SetKind::PolyImage: return "poly";
        case SetKind::Primes: return "primes";
        case SetKind::Powers: return "powers";
        case SetKind::Union: return "union";
        case SetKind::Intersection: return "intersect";
        case SetKind::ComplementWithin: return "complement";
        case SetKind::Dilate: return "dilate";
    }
    return "?";
}

}  // namespace

Json IntegerSetSpec::to_json() const {
    Json j;
    j["kind"] = kind_name(kind_);
    switch (kind_) {
        case SetKind::All:
            break;
        case SetKind::Explicit:
            j["elements"] = ints_;
            break;
        case SetKind::Bohr: {
            Json arr = Json::array();
            for (auto const& a : alphas_) arr.push_back(scalar_to_json(a));
            j["alphas"] = arr;
            j["eps"] = rat_to_json(eps_);
            break;
        }
        case SetKind::PowerBohr:
            j["degree"] = degree_;
            j["beta"] = scalar_to_json(alphas_[0]);
            j["eps"] = rat_to_json(eps_);
            j["side"] = outside_ ? "outside" : "inside";
            break;
        case SetKind::Difference:
            j["base"] = a_->to_json();
            j["base_window"] = aux_;
            break;
        case SetKind::IP:
            j["generators"] = ints_;
            j["depth"] = degree_;
            break;
        case SetKind::PolyImage:
            j["coeffs"] = ints_;
            break;
        case SetKind::Primes:
            j["offset"] = aux_;
            break;
        case SetKind::Powers:
            j["base"] = aux_;
            break;
        case SetKind::Union:
        case SetKind::Intersection:
            j["a"] = a_->to_json();
            j["b"] = b_->to_json();
            break;
        case SetKind::ComplementWithin:
            j["a"] = a_->to_json();
            break;
        case SetKind::Dilate:
            j["a"] = a_->to_json();
            j["factor"] = aux_;
            break;
    }
    return j;
}

SpecPtr IntegerSetSpec::from_json(Json const& j) {
    std::string k = j.at("kind").get<std::string>();
    if (k == "all") return all();
    if (k == "explicit") return explicit_set(j.at("elements").get<std::vector<long long>>());
    if (k == "bohr") {
        std::vector<TorusScalar> alphas;
        for (auto const& a : j.at("alphas")) alphas.push_back(scalar_from_json(a));
        return bohr(std::move(alphas), rat_from_json(j.at("eps")));
    }
    if (k == "powerbohr")
        return power_bohr(j.at("degree").get<int>(), scalar_from_json(j.at("beta")),
                          rat_from_json(j.at("eps")), j.at("side").get<std::string>() == "outside");
    if (k == "diff") return difference(from_json(j.at("base")), j.at("base_window").get<long long>());
    if (k == "ip") return ip(j.at("generators").get<std::vector<long long>>(), j.at("depth").get<int>());
    if (k == "poly") return poly_image(j.at("coeffs").get<std::vector<long long>>());
    if (k == "primes") return primes(j.at("offset").get<long long>());
    if (k == "powers") return powers(j.at("base").get<long long>());
    if (k == "union") return set_union(from_json(j.at("a")), from_json(j.at("b")));
    if (k == "intersect") return set_intersection(from_json(j.at("a")), from_json(j.at("b")));
    if (k == "complement") return complement_within_window(from_json(j.at("a")));
    if (k == "dilate") return dilate(from_json(j.at("a")), j.at("factor").get<long long>());
    throw std::invalid_argument("from_json: unknown set kind '" + k + "'");
}

std::string IntegerSetSpec::describe() const { return print_spec(*this); }

}  // namespace reclab
