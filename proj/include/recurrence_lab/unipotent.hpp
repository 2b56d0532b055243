#pragma once

// Exact integer/rational algebra for unipotent matrices: powers and their
// closed form, the coordinate subgroups G_j, the triangular A operator, the
// finite-difference operator, and the perturbation lift used to push
// multiple recurrence up one nilpotency step.

#include <recurrence_lab/numeric.hpp>

#include <optional>
#include <vector>

namespace reclab {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatVector = std::vector<Rat>;

IntMatrix mat_identity(int s);
IntMatrix mat_mul(IntMatrix const& a, IntMatrix const& b);
IntMatrix mat_sub(IntMatrix const& a, IntMatrix const& b);
bool mat_is_zero(IntMatrix const& a);
RatVector mat_apply(IntMatrix const& m, RatVector const& v);

// Integer matrix M with (M - Id)^s = 0, checked at construction.
class UnipotentMatrix {
public:
    explicit UnipotentMatrix(IntMatrix entries);

    // Single Jordan block: 1 on the diagonal and superdiagonal.
    static UnipotentMatrix jordan_block(int s);
    // Direct sum of Jordan blocks.
    static UnipotentMatrix block_diagonal(std::vector<int> const& block_sizes);
    static UnipotentMatrix direct_sum(UnipotentMatrix const& a, UnipotentMatrix const& b);

    int dim() const { return s_; }
    IntMatrix const& entries() const { return entries_; }
    BigInt const& entry(int i, int j) const { return entries_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    // (M - Id)^j for 0 <= j <= s; cached at construction.
    IntMatrix const& nilpotent_power(int j) const { return nil_pows_[static_cast<size_t>(j)]; }

    // Jordan block sizes when the matrix was built from blocks.
    std::optional<std::vector<int>> const& jordan_blocks() const { return blocks_; }
    bool is_single_jordan_block() const { return blocks_ && blocks_->size() == 1; }

    // M^n = sum_j C(n,j) (M-Id)^j; exact for any n >= 0.
    IntMatrix power(BigInt const& n) const;
    // sum_{k=0}^{n-1} M^k = sum_j C(n,j+1) (M-Id)^j.
    IntMatrix geometric_sum(BigInt const& n) const;

    bool operator==(UnipotentMatrix const& o) const { return entries_ == o.entries_; }

private:
    int s_;
    IntMatrix entries_;
    std::vector<IntMatrix> nil_pows_;
    std::optional<std::vector<int>> blocks_;
};

// M^n by repeated multiplication; the independent oracle route.
IntMatrix matrix_power(UnipotentMatrix const& m, long n);

// Entries of the n-th power of the s-dimensional Jordan block:
// entry (i,j) = C(n, j-i) above the diagonal, 1 on it, 0 below.
IntMatrix jordan_power_closed_form(int s, long n);

// v lies in G_j = range(M-Id)^{j-1}, i.e. v_i = 0 for all i >= s-j+2
// (1-indexed coordinates, s = v.size()). Requires 2 <= j <= s.
bool subgroup_membership(RatVector const& v, int j);

// The A operator of the lift: the unique x with x_1 = 0 and (M^n - Id)x = y,
// for y with y_s = 0, by back-substitution on the triangular system.
// Requires n >= 1 (the system is singular at n = 0).
RatVector solve_A(int s, long n, RatVector const& y);

// l-th forward difference sum_k C(l,k) (-1)^(l-k) u_k of the l+1 values u.
Rat finite_difference(std::vector<Rat> const& u, int ell);

struct LiftCertificate {
    std::vector<RatVector> v;          // v_k = -sum_j C(k,j)(-1)^(k-j) w_j
    std::vector<RatVector> y_terms;    // y_k = A^k v_k
    RatVector y;                       // y_1 + ... + y_r
    std::vector<RatVector> residuals;  // (M^n - Id)^k y - v_k
    std::vector<RatVector> tails;      // sum_{l=k+1}^r A^(l-k) v_l, computed independently
    bool s1_zero;                      // sum_{l<k} (M^n-Id)^k y_l == 0, all k
    bool s2_equals_v;                  // (M^n-Id)^k y_k == v_k, all k
    bool residual_equals_tail;         // residuals[k] == tails[k], all k
    bool y_in_target_subgroup;         // y in G_{s-r} (vacuous when s-r = 1)
    Rat y_sup_norm;
    std::vector<Rat> residual_sup_norms;
};

// The perturbation lift: from r first-coordinate perturbations w_1..w_r in G_s
// builds y in G_{s-r} with (M^n - Id)^k y = v_k up to an explicitly certified
// tail. Requires 1 <= r <= s-1, n >= 1, and each w_k supported on the first
// coordinate only.
LiftCertificate lift_perturbation(int s, int r, long n, std::vector<RatVector> const& w);

Rat sup_norm(RatVector const& v);

}  // namespace reclab
