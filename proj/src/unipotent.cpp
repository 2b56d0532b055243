#include <recurrence_lab/unipotent.hpp>

#include <stdexcept>

namespace reclab {

IntMatrix mat_identity(int s) {
    IntMatrix m(static_cast<size_t>(s), std::vector<BigInt>(static_cast<size_t>(s), 0));
    for (int i = 0; i < s; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

IntMatrix mat_mul(IntMatrix const& a, IntMatrix const& b) {
    size_t n = a.size();
    IntMatrix r(n, std::vector<BigInt>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j)
                if (b[k][j] != 0) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

IntMatrix mat_sub(IntMatrix const& a, IntMatrix const& b) {
    IntMatrix r = a;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r.size(); ++j) r[i][j] -= b[i][j];
    return r;
}

bool mat_is_zero(IntMatrix const& a) {
    for (auto const& row : a)
        for (auto const& e : row)
            if (e != 0) return false;
    return true;
}

RatVector mat_apply(IntMatrix const& m, RatVector const& v) {
    size_t n = m.size();
    if (v.size() != n) throw std::invalid_argument("mat_apply: dimension mismatch");
    RatVector r(n, Rat(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (m[i][j] != 0 && v[j] != 0) r[i] += Rat(m[i][j]) * v[j];
    return r;
}

UnipotentMatrix::UnipotentMatrix(IntMatrix entries) : entries_(std::move(entries)) {
    s_ = static_cast<int>(entries_.size());
    if (s_ < 1) throw std::invalid_argument("UnipotentMatrix: dimension must be >= 1");
    for (auto const& row : entries_)
        if (static_cast<int>(row.size()) != s_) throw std::invalid_argument("UnipotentMatrix: not square");
    IntMatrix nil = mat_sub(entries_, mat_identity(s_));
    nil_pows_.push_back(mat_identity(s_));
    nil_pows_.push_back(nil);
    for (int j = 2; j <= s_; ++j) nil_pows_.push_back(mat_mul(nil_pows_.back(), nil));
    if (!mat_is_zero(nil_pows_[static_cast<size_t>(s_)]))
        throw std::invalid_argument("UnipotentMatrix: (M - Id)^s != 0");
    nil_pows_.pop_back();  // keep (M-Id)^0 .. (M-Id)^{s-1}; the s-th is zero
}

UnipotentMatrix UnipotentMatrix::jordan_block(int s) {
    IntMatrix m = mat_identity(s);
    for (int i = 0; i + 1 < s; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = 1;
    UnipotentMatrix u(std::move(m));
    u.blocks_ = std::vector<int>{s};
    return u;
}

UnipotentMatrix UnipotentMatrix::block_diagonal(std::vector<int> const& block_sizes) {
    if (block_sizes.empty()) throw std::invalid_argument("block_diagonal: no blocks");
    int s = 0;
    for (int b : block_sizes) {
        if (b < 1) throw std::invalid_argument("block_diagonal: block size must be >= 1");
        s += b;
    }
    IntMatrix m = mat_identity(s);
    int off = 0;
    for (int b : block_sizes) {
        for (int i = 0; i + 1 < b; ++i)
            m[static_cast<size_t>(off + i)][static_cast<size_t>(off + i + 1)] = 1;
        off += b;
    }
    UnipotentMatrix u(std::move(m));
    u.blocks_ = block_sizes;
    return u;
}

UnipotentMatrix UnipotentMatrix::direct_sum(UnipotentMatrix const& a, UnipotentMatrix const& b) {
    int s = a.dim() + b.dim();
    IntMatrix m(static_cast<size_t>(s), std::vector<BigInt>(static_cast<size_t>(s), 0));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = a.entry(i, j);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j)
            m[static_cast<size_t>(a.dim() + i)][static_cast<size_t>(a.dim() + j)] = b.entry(i, j);
    UnipotentMatrix u(std::move(m));
    if (a.blocks_ && b.blocks_) {
        std::vector<int> blk = *a.blocks_;
        blk.insert(blk.end(), b.blocks_->begin(), b.blocks_->end());
        u.blocks_ = std::move(blk);
    }
    return u;
}

IntMatrix UnipotentMatrix::power(BigInt const& n) const {
    if (n < 0) throw std::invalid_argument("power: n must be >= 0");
    IntMatrix r(static_cast<size_t>(s_), std::vector<BigInt>(static_cast<size_t>(s_), 0));
    for (int j = 0; j < s_; ++j) {
        BigInt c = binomial(n, j);
        if (c == 0) continue;
        auto const& nj = nil_pows_[static_cast<size_t>(j)];
        for (size_t a = 0; a < r.size(); ++a)
            for (size_t b = 0; b < r.size(); ++b)
                if (nj[a][b] != 0) r[a][b] += c * nj[a][b];
    }
    return r;
}

IntMatrix UnipotentMatrix::geometric_sum(BigInt const& n) const {
    if (n < 0) throw std::invalid_argument("geometric_sum: n must be >= 0");
    IntMatrix r(static_cast<size_t>(s_), std::vector<BigInt>(static_cast<size_t>(s_), 0));
    for (int j = 0; j < s_; ++j) {
        BigInt c = binomial(n, j + 1);
        if (c == 0) continue;
        auto const& nj = nil_pows_[static_cast<size_t>(j)];
        for (size_t a = 0; a < r.size(); ++a)
            for (size_t b = 0; b < r.size(); ++b)
                if (nj[a][b] != 0) r[a][b] += c * nj[a][b];
    }
    return r;
}

IntMatrix matrix_power(UnipotentMatrix const& m, long n) {
    if (n < 0) throw std::invalid_argument("matrix_power: n must be >= 0");
    IntMatrix r = mat_identity(m.dim());
    for (long i = 0; i < n; ++i) r = mat_mul(r, m.entries());
    return r;
}

IntMatrix jordan_power_closed_form(int s, long n) {
    if (s < 1) throw std::invalid_argument("jordan_power_closed_form: s must be >= 1");
    if (n < 0) throw std::invalid_argument("jordan_power_closed_form: n must be >= 0");
    IntMatrix r(static_cast<size_t>(s), std::vector<BigInt>(static_cast<size_t>(s), 0));
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j)
            r[static_cast<size_t>(i)][static_cast<size_t>(j)] = binomial(BigInt(n), j - i);
    return r;
}

bool subgroup_membership(RatVector const& v, int j) {
    int s = static_cast<int>(v.size());
    if (j < 2 || j > s) throw std::invalid_argument("subgroup_membership: j must be in 2..s");
    for (int i = s - j + 2; i <= s; ++i)
        if (v[static_cast<size_t>(i - 1)] != 0) return false;
    return true;
}

RatVector solve_A(int s, long n, RatVector const& y) {
    if (n < 1) throw std::domain_error("solve_A: n must be >= 1 (p_1(0) = 0 makes the system singular)");
    if (static_cast<int>(y.size()) != s) throw std::invalid_argument("solve_A: dimension mismatch");
    if (y[static_cast<size_t>(s - 1)] != 0) throw std::invalid_argument("solve_A: y_s must be 0");
    // Equations (1-indexed): y_i = sum_{k=1}^{s-i} C(n,k) x_{i+k}, back-substituted.
    std::vector<BigInt> binom(static_cast<size_t>(s), 1);
    for (int k = 1; k < s; ++k) binom[static_cast<size_t>(k)] = binomial(BigInt(n), k);
    RatVector x(static_cast<size_t>(s), Rat(0));
    for (int i = s - 2; i >= 0; --i) {
        Rat acc = y[static_cast<size_t>(i)];
        for (int k = 2; k <= s - 1 - i; ++k)
            acc -= Rat(binom[static_cast<size_t>(k)]) * x[static_cast<size_t>(i + k)];
        x[static_cast<size_t>(i + 1)] = acc / Rat(binom[1]);
    }
    return x;
}

Rat finite_difference(std::vector<Rat> const& u, int ell) {
    if (ell < 1) throw std::invalid_argument("finite_difference: ell must be >= 1");
    if (static_cast<int>(u.size()) != ell + 1)
        throw std::invalid_argument("finite_difference: expected ell+1 values");
    Rat acc = 0;
    for (int k = 0; k <= ell; ++k) {
        BigInt c = binomial(BigInt(ell), k);
        if ((ell - k) % 2 != 0) c = -c;
        acc += Rat(c) * u[static_cast<size_t>(k)];
    }
    return acc;
}

Rat sup_norm(RatVector const& v) {
    Rat best = 0;
    for (auto const& e : v) {
        Rat a = rat_abs(e);
        if (a > best) best = a;
    }
    return best;
}

LiftCertificate lift_perturbation(int s, int r, long n, std::vector<RatVector> const& w) {
    if (r < 1 || r > s - 1) throw std::invalid_argument("lift_perturbation: r must be in 1..s-1");
    if (n < 1) throw std::invalid_argument("lift_perturbation: n must be >= 1");
    if (static_cast<int>(w.size()) != r) throw std::invalid_argument("lift_perturbation: expected r vectors");
    for (auto const& wk : w) {
        if (static_cast<int>(wk.size()) != s) throw std::invalid_argument("lift_perturbation: dimension mismatch");
        if (!subgroup_membership(wk, s))
            throw std::invalid_argument("lift_perturbation: w_k must lie in G_s (first coordinate only)");
    }

    LiftCertificate cert;
    cert.v.resize(static_cast<size_t>(r));
    for (int k = 1; k <= r; ++k) {
        RatVector vk(static_cast<size_t>(s), Rat(0));
        for (int j = 1; j <= k; ++j) {
            BigInt c = binomial(BigInt(k), j);
            if ((k - j) % 2 != 0) c = -c;
            for (int i = 0; i < s; ++i) vk[static_cast<size_t>(i)] -= Rat(c) * w[static_cast<size_t>(j - 1)][static_cast<size_t>(i)];
        }
        cert.v[static_cast<size_t>(k - 1)] = std::move(vk);
    }

    // y_k = A^k v_k; cache A^j v_k for the tail identities.
    std::vector<std::vector<RatVector>> apow(static_cast<size_t>(r));  // apow[k-1][j] = A^j v_k
    for (int k = 1; k <= r; ++k) {
        auto& chain = apow[static_cast<size_t>(k - 1)];
        chain.push_back(cert.v[static_cast<size_t>(k - 1)]);
        for (int j = 1; j <= k; ++j) chain.push_back(solve_A(s, n, chain.back()));
        cert.y_terms.push_back(chain.back());
    }

    cert.y.assign(static_cast<size_t>(s), Rat(0));
    for (auto const& yk : cert.y_terms)
        for (int i = 0; i < s; ++i) cert.y[static_cast<size_t>(i)] += yk[static_cast<size_t>(i)];

    UnipotentMatrix jb = UnipotentMatrix::jordan_block(s);
    IntMatrix p = jb.power(n);
    IntMatrix d = mat_sub(p, mat_identity(s));  // M^n - Id

    cert.s1_zero = true;
    cert.s2_equals_v = true;
    cert.residual_equals_tail = true;
    for (int k = 1; k <= r; ++k) {
        // (M^n - Id)^k applied termwise to the y_l
        RatVector s1(static_cast<size_t>(s), Rat(0));
        RatVector s2;
        RatVector total(static_cast<size_t>(s), Rat(0));
        for (int l = 1; l <= r; ++l) {
            RatVector t = cert.y_terms[static_cast<size_t>(l - 1)];
            for (int rep = 0; rep < k; ++rep) t = mat_apply(d, t);
            for (int i = 0; i < s; ++i) total[static_cast<size_t>(i)] += t[static_cast<size_t>(i)];
            if (l < k)
                for (int i = 0; i < s; ++i) s1[static_cast<size_t>(i)] += t[static_cast<size_t>(i)];
            if (l == k) s2 = t;
        }
        for (auto const& e : s1)
            if (e != 0) cert.s1_zero = false;
        if (s2 != cert.v[static_cast<size_t>(k - 1)]) cert.s2_equals_v = false;

        RatVector res(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i)
            res[static_cast<size_t>(i)] = total[static_cast<size_t>(i)] - cert.v[static_cast<size_t>(k - 1)][static_cast<size_t>(i)];

        RatVector tail(static_cast<size_t>(s), Rat(0));
        for (int l = k + 1; l <= r; ++l) {
            RatVector const& alv = apow[static_cast<size_t>(l - 1)][static_cast<size_t>(l - k)];
            for (int i = 0; i < s; ++i) tail[static_cast<size_t>(i)] += alv[static_cast<size_t>(i)];
        }
        if (res != tail) cert.residual_equals_tail = false;

        cert.residual_sup_norms.push_back(sup_norm(res));
        cert.residuals.push_back(std::move(res));
        cert.tails.push_back(std::move(tail));
    }

    cert.y_in_target_subgroup = (s - r >= 2) ? subgroup_membership(cert.y, s - r) : true;
    cert.y_sup_norm = sup_norm(cert.y);
    return cert;
}

}  // namespace reclab
