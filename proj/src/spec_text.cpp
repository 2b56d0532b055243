#include <recurrence_lab/spec_text.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace reclab {

namespace {

std::string trim(std::string const& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// split at commas not enclosed in () or []
std::vector<std::string> split_top(std::string const& s) {
    std::vector<std::string> out;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[') ++depth;
        else if (c == ')' || c == ']') --depth;
        else if (c == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

bool is_wrapped(std::string const& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') {
            --depth;
            if (depth == 0) return i == s.size() - 1;
        }
    }
    return false;
}

std::string unwrap(std::string const& s) { return trim(s.substr(1, s.size() - 2)); }

long long parse_ll(std::string const& s, size_t pos) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError("expected integer, got '" + s + "'", pos);
    }
}

std::vector<long long> parse_ll_list(std::string const& s, size_t pos) {
    std::vector<long long> out;
    for (auto const& item : split_top(s)) out.push_back(parse_ll(item, pos));
    return out;
}

// key=value lookup within parameter items; remaining bare items returned too
struct Params {
    std::vector<std::pair<std::string, std::string>> kv;
    std::vector<std::string> bare;

    std::string const* find(std::string const& key) const {
        for (auto const& [k, v] : kv)
            if (k == key) return &v;
        return nullptr;
    }
    std::string const& require(std::string const& key, size_t pos) const {
        auto* v = find(key);
        if (!v) throw ParseError("missing parameter '" + key + "'", pos);
        return *v;
    }
};

Params parse_params(std::vector<std::string> const& items) {
    Params p;
    for (auto const& it : items) {
        size_t depth_adj = 0;
        size_t eq = std::string::npos;
        int depth = 0;
        for (size_t i = 0; i < it.size(); ++i) {
            if (it[i] == '[' || it[i] == '(') ++depth;
            else if (it[i] == ']' || it[i] == ')') --depth;
            else if (it[i] == '=' && depth == 0) { eq = i; break; }
        }
        (void)depth_adj;
        if (eq == std::string::npos)
            p.bare.push_back(it);
        else
            p.kv.emplace_back(trim(it.substr(0, eq)), trim(it.substr(eq + 1)));
    }
    return p;
}

std::string strip_brackets(std::string const& s, size_t pos) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("expected [...] list, got '" + s + "'", pos);
    return trim(s.substr(1, s.size() - 2));
}

}  // namespace

Rat parse_rational(std::string const& text) {
    std::string s = trim(text);
    if (s.empty()) throw ParseError("empty number", 0);
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '.' && c != '-' && c != '+')
            throw ParseError("expected a number, got '" + s + "'", 0);
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rat(BigInt(trim(s.substr(0, slash))), BigInt(trim(s.substr(slash + 1))));
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        if (head.empty() || head == "-" || head == "+") head += "0";
        for (char c : tail)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad decimal '" + s + "'", 0);
        BigInt den = 1;
        for (size_t i = 0; i < tail.size(); ++i) den *= 10;
        BigInt whole(head);
        BigInt fracpart = tail.empty() ? BigInt(0) : BigInt(tail);
        if (whole < 0 || head[0] == '-') return Rat(whole * den - fracpart, den);
        return Rat(whole * den + fracpart, den);
    }
    return Rat(BigInt(s));
}

TorusScalar parse_scalar(std::string const& text, Backend backend) {
    std::string s = trim(text);
    if (s.empty()) throw ParseError("empty scalar", 0);
    if (auto name = surrogate_from_string(s)) return irrational_surrogate(*name, backend);
    if (s.rfind("cf[", 0) == 0 && s.back() == ']') {
        std::string body = s.substr(3, s.size() - 4);
        auto semi = body.find(';');
        std::vector<long> terms;
        if (semi == std::string::npos) {
            terms.push_back(static_cast<long>(parse_ll(trim(body), 0)));
        } else {
            terms.push_back(static_cast<long>(parse_ll(trim(body.substr(0, semi)), 0)));
            for (auto const& t : split_top(body.substr(semi + 1)))
                terms.push_back(static_cast<long>(parse_ll(t, 0)));
        }
        return irrational_surrogate(SurrogateName::CustomCF, backend, terms);
    }
    if (s.rfind("fx:", 0) == 0) {
        if (backend != Backend::Fixed)
            throw ParseError("fx: literal requires the fixed backend", 0);
        return TorusScalar::from_word(uint128_from_hex(s.substr(3)));
    }
    return TorusScalar::from_rational(parse_rational(s), backend);
}

std::string print_scalar(TorusScalar const& s) {
    if (s.backend() == Backend::Exact) {
        Rat r = s.as_rational();
        return numerator(r).str() + "/" + denominator(r).str();
    }
    return "fx:" + uint128_to_hex(s.word());
}

namespace {

std::vector<TorusScalar> parse_scalar_list(std::string const& s, Backend backend, size_t pos) {
    std::string body = strip_brackets(s, pos);
    std::vector<TorusScalar> out;
    if (body.empty()) return out;
    for (auto const& item : split_top(body)) out.push_back(parse_scalar(item, backend));
    return out;
}

SpecPtr parse_spec_inner(std::string const& text, Backend backend, size_t pos);

// body of kind(...) for unary combinators: inner spec plus trailing options
struct UnaryBody {
    std::string inner;
    Params opts;
};

UnaryBody split_unary(std::string const& content, std::initializer_list<char const*> keys) {
    auto items = split_top(content);
    UnaryBody b;
    size_t end = items.size();
    while (end > 1) {
        auto const& item = items[end - 1];
        auto eq = item.find('=');
        bool is_opt = false;
        if (eq != std::string::npos) {
            std::string key = trim(item.substr(0, eq));
            for (auto k : keys)
                if (key == k) is_opt = true;
        }
        if (!is_opt) break;
        auto eq2 = item.find('=');
        b.opts.kv.emplace_back(trim(item.substr(0, eq2)), trim(item.substr(eq2 + 1)));
        --end;
    }
    std::string inner;
    for (size_t i = 0; i < end; ++i) {
        if (i) inner += ",";
        inner += items[i];
    }
    inner = trim(inner);
    if (is_wrapped(inner)) inner = unwrap(inner);
    b.inner = inner;
    return b;
}

SpecPtr parse_spec_inner(std::string const& text, Backend backend, size_t pos) {
    std::string s = trim(text);
    if (s.empty()) throw ParseError("empty set expression", pos);

    // aliases
    if (s == "all" || s == "naturals") return IntegerSetSpec::all();
    if (s == "odds") return IntegerSetSpec::poly_image({-1, 2});
    if (s == "evens") return IntegerSetSpec::poly_image({0, 2});
    if (s == "squares") return IntegerSetSpec::poly_image({0, 0, 1});
    if (s == "powers2") return IntegerSetSpec::powers(2);
    if (s == "primes") return IntegerSetSpec::primes(0);

    size_t mark = s.find_first_of(":(");
    if (mark == std::string::npos) throw ParseError("unknown set '" + s + "'", pos);
    std::string kind = trim(s.substr(0, mark));

    if (s[mark] == '(') {
        if (s.back() != ')') throw ParseError("unbalanced parentheses", pos + s.size() - 1);
        std::string content = s.substr(mark + 1, s.size() - mark - 2);
        if (kind == "union" || kind == "intersect") {
            auto parts = split_top(content);
            if (parts.size() != 2 || !is_wrapped(parts[0]) || !is_wrapped(parts[1]))
                throw ParseError(kind + " expects ((a),(b))", pos + mark);
            auto a = parse_spec_inner(unwrap(parts[0]), backend, pos + mark);
            auto b = parse_spec_inner(unwrap(parts[1]), backend, pos + mark);
            return kind == "union" ? IntegerSetSpec::set_union(a, b)
                                   : IntegerSetSpec::set_intersection(a, b);
        }
        if (kind == "diff") {
            auto body = split_unary(content, {"window"});
            long long window = 0;
            if (auto* w = body.opts.find("window")) window = parse_ll(*w, pos);
            return IntegerSetSpec::difference(parse_spec_inner(body.inner, backend, pos + mark), window);
        }
        if (kind == "complement") {
            auto body = split_unary(content, {});
            return IntegerSetSpec::complement_within_window(
                parse_spec_inner(body.inner, backend, pos + mark));
        }
        if (kind == "dilate") {
            auto body = split_unary(content, {"factor"});
            return IntegerSetSpec::dilate(parse_spec_inner(body.inner, backend, pos + mark),
                                          parse_ll(body.opts.require("factor", pos), pos));
        }
        throw ParseError("unknown set combinator '" + kind + "'", pos);
    }

    std::string rest = s.substr(mark + 1);
    auto items = split_top(rest);
    Params p = parse_params(items);

    if (kind == "explicit") return IntegerSetSpec::explicit_set(parse_ll_list(rest, pos));
    if (kind == "bohr") {
        if (p.bare.empty()) throw ParseError("bohr: missing frequency list", pos);
        auto alphas = parse_scalar_list(p.bare[0], backend, pos);
        if (alphas.empty()) throw ParseError("bohr: empty frequency list", pos);
        return IntegerSetSpec::bohr(std::move(alphas), parse_rational(p.require("eps", pos)));
    }
    if (kind == "powerbohr") {
        bool outside = true;
        for (auto const& b : p.bare) {
            if (b == "inside") outside = false;
            else if (b == "outside") outside = true;
            else throw ParseError("powerbohr: unknown token '" + b + "'", pos);
        }
        return IntegerSetSpec::power_bohr(static_cast<int>(parse_ll(p.require("s", pos), pos)),
                                          parse_scalar(p.require("beta", pos), backend),
                                          parse_rational(p.require("eps", pos)), outside);
    }
    if (kind == "ip") {
        if (p.bare.empty()) throw ParseError("ip: missing generator list", pos);
        auto gens = parse_ll_list(strip_brackets(p.bare[0], pos), pos);
        int depth = static_cast<int>(gens.size());
        if (auto* d = p.find("depth")) depth = static_cast<int>(parse_ll(*d, pos));
        return IntegerSetSpec::ip(std::move(gens), depth);
    }
    if (kind == "poly") return IntegerSetSpec::poly_image(parse_ll_list(rest, pos));
    if (kind == "primes") {
        long long off = 0;
        if (auto* o = p.find("offset")) off = parse_ll(*o, pos);
        return IntegerSetSpec::primes(off);
    }
    if (kind == "powers") return IntegerSetSpec::powers(parse_ll(p.require("base", pos), pos));
    throw ParseError("unknown set kind '" + kind + "'", pos);
}

}  // namespace

SpecPtr parse_spec(std::string const& text, Backend backend) {
    return parse_spec_inner(text, backend, 0);
}

namespace {

std::string print_rat(Rat const& r) { return numerator(r).str() + "/" + denominator(r).str(); }

std::string join_ll(std::vector<long long> const& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace

std::string print_spec(IntegerSetSpec const& spec) {
    switch (spec.kind()) {
        case SetKind::All:
            return "all";
        case SetKind::Explicit:
            return "explicit:" + join_ll(spec.ints());
        case SetKind::Bohr: {
            std::string out = "bohr:[";
            for (size_t i = 0; i < spec.alphas().size(); ++i) {
                if (i) out += ",";
                out += print_scalar(spec.alphas()[i]);
            }
            return out + "],eps=" + print_rat(spec.eps());
        }
        case SetKind::PowerBohr:
            return "powerbohr:s=" + std::to_string(spec.degree()) +
                   ",beta=" + print_scalar(spec.alphas()[0]) + ",eps=" + print_rat(spec.eps()) +
                   (spec.outside() ? ",outside" : ",inside");
        case SetKind::Difference:
            return "diff((" + print_spec(*spec.child_a()) + "),window=" + std::to_string(spec.aux()) + ")";
        case SetKind::IP:
            return "ip:[" + join_ll(spec.ints()) + "],depth=" + std::to_string(spec.degree());
        case SetKind::PolyImage:
            return "poly:" + join_ll(spec.ints());
        case SetKind::Primes:
            return "primes:offset=" + std::to_string(spec.aux());
        case SetKind::Powers:
            return "powers:base=" + std::to_string(spec.aux());
        case SetKind::Union:
            return "union((" + print_spec(*spec.child_a()) + "),(" + print_spec(*spec.child_b()) + "))";
        case SetKind::Intersection:
            return "intersect((" + print_spec(*spec.child_a()) + "),(" + print_spec(*spec.child_b()) + "))";
        case SetKind::ComplementWithin:
            return "complement((" + print_spec(*spec.child_a()) + "))";
        case SetKind::Dilate:
            return "dilate((" + print_spec(*spec.child_a()) + "),factor=" + std::to_string(spec.aux()) + ")";
    }
    throw std::logic_error("print_spec: unknown kind");
}

TorusPoint parse_point(std::string const& text, Backend backend) {
    auto coords = parse_scalar_list(trim(text), backend, 0);
    if (coords.empty()) throw ParseError("point: empty coordinate list", 0);
    return TorusPoint(std::move(coords));
}

std::string print_point(TorusPoint const& p) {
    std::string out = "[";
    for (int i = 0; i < p.dim(); ++i) {
        if (i) out += ",";
        out += print_scalar(p.coord(i));
    }
    return out + "]";
}

AffineSystem parse_system(std::string const& text, Backend backend) {
    std::string s = trim(text);
    size_t mark = s.find_first_of(":(");
    if (mark == std::string::npos) throw ParseError("unknown system '" + s + "'", 0);
    std::string kind = trim(s.substr(0, mark));

    if (s[mark] == '(') {
        if (kind != "product" || s.back() != ')') throw ParseError("unknown system '" + s + "'", 0);
        auto parts = split_top(s.substr(mark + 1, s.size() - mark - 2));
        if (parts.size() != 2 || !is_wrapped(parts[0]) || !is_wrapped(parts[1]))
            throw ParseError("product expects ((sys),(sys))", 0);
        return product_system(parse_system(unwrap(parts[0]), backend),
                              parse_system(unwrap(parts[1]), backend));
    }

    std::string rest = s.substr(mark + 1);
    Params p = parse_params(split_top(rest));
    if (kind == "rotation") {
        if (p.bare.size() != 1) throw ParseError("rotation expects one scalar", 0);
        TorusScalar a = parse_scalar(p.bare[0], backend);
        return AffineSystem(UnipotentMatrix::jordan_block(1), TorusPoint({a}));
    }
    if (kind == "flw") {
        int sdim = static_cast<int>(parse_ll(p.require("s", 0), 0));
        return flw_system(sdim, parse_scalar(p.require("beta", 0), backend));
    }
    if (kind == "jordan") {
        int sdim = static_cast<int>(parse_ll(p.require("s", 0), 0));
        TorusPoint alpha = parse_point(p.require("alpha", 0), backend);
        if (alpha.dim() != sdim) throw ParseError("jordan: alpha dimension mismatch", 0);
        return AffineSystem(UnipotentMatrix::jordan_block(sdim), alpha);
    }
    if (kind == "blocks") {
        auto sizes = parse_ll_list(strip_brackets(p.require("sizes", 0), 0), 0);
        std::vector<int> bs(sizes.begin(), sizes.end());
        TorusPoint alpha = parse_point(p.require("alpha", 0), backend);
        return AffineSystem(UnipotentMatrix::block_diagonal(bs), alpha);
    }
    throw ParseError("unknown system kind '" + kind + "'", 0);
}

}  // namespace reclab
