#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paratrial/common.hpp"

namespace paratrial {

/// One coefficient of the quadratic form. (i, j) is an unordered pair;
/// i == j denotes a linear (diagonal) term.
template <class T>
struct QuboTerm {
    Index i;
    Index j;
    T value;
};

/// Upper-triangular sparse quadratic model: minimize
///   sum_{i >= j} q_ij x_i x_j  over x in {0,1}^n.
///
/// Coefficients are stored once per unordered pair; absent pairs are zero.
/// Off-diagonal terms are additionally mirrored into per-row neighbor lists
/// (CSR layout) so single-flip energy differences cost O(deg(i)).
///
/// T = int64_t gives exact arithmetic with checked overflow on every
/// reported quantity; T = double gives IEEE semantics. Instances are
/// immutable after construction and safe to share across threads.
template <class T>
class QuboModel {
public:
    QuboModel() : n_(0) {}

    /// Throws std::invalid_argument on out-of-range indices or a pair listed
    /// twice. Zero-valued terms are dropped (canonical sparse form).
    QuboModel(Index n, const std::vector<QuboTerm<T>>& terms);

    Index size() const { return n_; }

    static constexpr ValueKind value_kind() { return kind_of<T>(); }

    T diagonal(Index i) const { return diag_[static_cast<std::size_t>(i)]; }

    Index degree(Index i) const {
        return static_cast<Index>(row_ptr_[static_cast<std::size_t>(i) + 1] -
                                  row_ptr_[static_cast<std::size_t>(i)]);
    }

    std::span<const Index> row_neighbors(Index i) const {
        return {col_.data() + row_ptr_[static_cast<std::size_t>(i)],
                col_.data() + row_ptr_[static_cast<std::size_t>(i) + 1]};
    }

    std::span<const T> row_values(Index i) const {
        return {val_.data() + row_ptr_[static_cast<std::size_t>(i)],
                val_.data() + row_ptr_[static_cast<std::size_t>(i) + 1]};
    }

    /// Count of stored (nonzero) coefficients, diagonal included.
    std::size_t term_count() const;

    /// Stored terms in canonical order: i >= j, sorted by (i, j).
    std::vector<QuboTerm<T>> terms() const;

private:
    Index n_;
    std::vector<T> diag_;
    // CSR over off-diagonal pairs; every pair appears in both rows.
    std::vector<std::size_t> row_ptr_;
    std::vector<Index> col_;
    std::vector<T> val_;
};

/// Spin-side equivalent of a QUBO: energy(s) = -sum h_i s_i
/// - sum_{i>j} J_ij s_i s_j + constant with s in {-1,+1}^n, s = 2x - 1.
/// Field and coupling values are doubles even for integer models because the
/// change of variables introduces quarters.
struct IsingCoupling {
    Index i;  // i > j
    Index j;
    double value;
};

struct IsingModel {
    Index n = 0;
    std::vector<double> fields;
    std::vector<IsingCoupling> couplings;
    double constant = 0.0;

    double energy(const Assignment& x) const;
};

/// Cached single-flip energy differences: deltas[i] is the energy change of
/// flipping bit i from the assignment the cache was built against.
template <class T>
struct DeltaCache {
    std::vector<T> deltas;
};

/// Full objective value. Exact (checked) for integer models.
/// Throws std::invalid_argument on length mismatch, std::overflow_error if
/// the energy leaves the int64 range.
template <class T>
T evaluate(const QuboModel<T>& model, const Assignment& x);

/// Energy change of flipping bit i, computed from row i alone.
template <class T>
T delta_energy(const QuboModel<T>& model, const Assignment& x, Index i);

template <class T>
DeltaCache<T> build_delta_cache(const QuboModel<T>& model, const Assignment& x);

/// Flips bit i, updating assignment, cache and energy in place. Amortized
/// O(deg(i)). The cache must be consistent with x on entry.
template <class T>
void apply_flip(const QuboModel<T>& model, Assignment& x, Index i, DeltaCache<T>& cache,
                T& energy);

/// Change of variables s = 2x - 1. For every x:
///   evaluate(model, x) == result.energy(x).
template <class T>
IsingModel to_ising(const QuboModel<T>& model);

struct FromIsingResult {
    QuboModel<double> model;
    /// evaluate(model, x) + constant == ising.energy(x) for every x. The
    /// QUBO form has no constant slot, so the assignment-independent part is
    /// returned alongside; it is exactly zero for outputs of to_ising.
    double constant;
};

FromIsingResult from_ising(const IsingModel& ising);

}  // namespace paratrial
