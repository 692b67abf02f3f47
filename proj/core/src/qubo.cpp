#include "paratrial/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace paratrial {

namespace {

// Wide accumulator: partial sums never wrap, only the reported value is
// range-checked.
template <class T>
using Acc = std::conditional_t<std::is_same_v<T, std::int64_t>, __int128, double>;

template <class T>
T narrow(Acc<T> v, const char* what) {
    if constexpr (std::is_same_v<T, std::int64_t>) {
        if (v > static_cast<__int128>(std::numeric_limits<std::int64_t>::max()) ||
            v < static_cast<__int128>(std::numeric_limits<std::int64_t>::min())) {
            throw std::overflow_error(std::string(what) + ": value exceeds 64-bit signed range");
        }
        return static_cast<std::int64_t>(v);
    } else {
        return v;
    }
}

void check_length(std::size_t got, Index n, const char* what) {
    if (got != static_cast<std::size_t>(n)) {
        throw std::invalid_argument(std::string(what) + ": assignment length " +
                                    std::to_string(got) + " does not match model size " +
                                    std::to_string(n));
    }
}

void check_index(Index i, Index n, const char* what) {
    if (i < 0 || i >= n) {
        throw std::invalid_argument(std::string(what) + ": index " + std::to_string(i) +
                                    " out of range [0, " + std::to_string(n) + ")");
    }
}

}  // namespace

template <class T>
QuboModel<T>::QuboModel(Index n, const std::vector<QuboTerm<T>>& terms) : n_(n) {
    if (n < 0) throw std::invalid_argument("QuboModel: negative variable count");
    diag_.assign(static_cast<std::size_t>(n), T{0});

    struct OffDiag {
        Index hi, lo;
        T value;
    };
    std::vector<OffDiag> off;
    off.reserve(terms.size());
    std::vector<std::uint8_t> diag_seen(static_cast<std::size_t>(n), 0);

    for (const auto& t : terms) {
        const Index hi = std::max(t.i, t.j);
        const Index lo = std::min(t.i, t.j);
        if (lo < 0 || hi >= n) {
            throw std::invalid_argument("QuboModel: term (" + std::to_string(t.i) + ", " +
                                        std::to_string(t.j) + ") out of range for n = " +
                                        std::to_string(n));
        }
        if (hi == lo) {
            if (diag_seen[static_cast<std::size_t>(hi)]) {
                throw std::invalid_argument("QuboModel: duplicate diagonal term at index " +
                                            std::to_string(hi));
            }
            diag_seen[static_cast<std::size_t>(hi)] = 1;
            diag_[static_cast<std::size_t>(hi)] = t.value;
        } else {
            off.push_back({hi, lo, t.value});
        }
    }
    for (auto& d : diag_) {
        if (d == T{0}) d = T{0};  // normalize -0.0
    }

    std::sort(off.begin(), off.end(), [](const OffDiag& a, const OffDiag& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
    });
    for (std::size_t k = 1; k < off.size(); ++k) {
        if (off[k].hi == off[k - 1].hi && off[k].lo == off[k - 1].lo) {
            throw std::invalid_argument("QuboModel: duplicate pair (" + std::to_string(off[k].hi) +
                                        ", " + std::to_string(off[k].lo) + ")");
        }
    }
    off.erase(std::remove_if(off.begin(), off.end(),
                             [](const OffDiag& t) { return t.value == T{0}; }),
              off.end());

    row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& t : off) {
        ++row_ptr_[static_cast<std::size_t>(t.hi) + 1];
        ++row_ptr_[static_cast<std::size_t>(t.lo) + 1];
    }
    std::partial_sum(row_ptr_.begin(), row_ptr_.end(), row_ptr_.begin());

    col_.resize(row_ptr_.back());
    val_.resize(row_ptr_.back());
    std::vector<std::size_t> cursor(row_ptr_.begin(), row_ptr_.end() - 1);
    for (const auto& t : off) {
        col_[cursor[static_cast<std::size_t>(t.hi)]] = t.lo;
        val_[cursor[static_cast<std::size_t>(t.hi)]++] = t.value;
        col_[cursor[static_cast<std::size_t>(t.lo)]] = t.hi;
        val_[cursor[static_cast<std::size_t>(t.lo)]++] = t.value;
    }
    // Neighbor lists sorted by column for deterministic iteration.
    for (Index i = 0; i < n; ++i) {
        const std::size_t lo = row_ptr_[static_cast<std::size_t>(i)];
        const std::size_t hi = row_ptr_[static_cast<std::size_t>(i) + 1];
        std::vector<std::size_t> order(hi - lo);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return col_[lo + a] < col_[lo + b]; });
        std::vector<Index> c(hi - lo);
        std::vector<T> v(hi - lo);
        for (std::size_t k = 0; k < order.size(); ++k) {
            c[k] = col_[lo + order[k]];
            v[k] = val_[lo + order[k]];
        }
        std::copy(c.begin(), c.end(), col_.begin() + static_cast<std::ptrdiff_t>(lo));
        std::copy(v.begin(), v.end(), val_.begin() + static_cast<std::ptrdiff_t>(lo));
    }
}

template <class T>
std::size_t QuboModel<T>::term_count() const {
    std::size_t count = col_.size() / 2;
    for (const T& d : diag_) {
        if (d != T{0}) ++count;
    }
    return count;
}

template <class T>
std::vector<QuboTerm<T>> QuboModel<T>::terms() const {
    std::vector<QuboTerm<T>> out;
    out.reserve(term_count());
    for (Index i = 0; i < n_; ++i) {
        const auto cols = row_neighbors(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] < i) out.push_back({i, cols[k], vals[k]});
        }
        if (diag_[static_cast<std::size_t>(i)] != T{0}) {
            out.push_back({i, i, diag_[static_cast<std::size_t>(i)]});
        }
    }
    return out;
}

template <class T>
T evaluate(const QuboModel<T>& model, const Assignment& x) {
    check_length(x.size(), model.size(), "evaluate");
    Acc<T> acc = 0;
    for (Index i = 0; i < model.size(); ++i) {
        if (!x[static_cast<std::size_t>(i)]) continue;
        acc += static_cast<Acc<T>>(model.diagonal(i));
        const auto cols = model.row_neighbors(i);
        const auto vals = model.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] < i && x[static_cast<std::size_t>(cols[k])]) {
                acc += static_cast<Acc<T>>(vals[k]);
            }
        }
    }
    return narrow<T>(acc, "evaluate");
}

template <class T>
T delta_energy(const QuboModel<T>& model, const Assignment& x, Index i) {
    check_length(x.size(), model.size(), "delta_energy");
    check_index(i, model.size(), "delta_energy");
    Acc<T> acc = static_cast<Acc<T>>(model.diagonal(i));
    const auto cols = model.row_neighbors(i);
    const auto vals = model.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (x[static_cast<std::size_t>(cols[k])]) acc += static_cast<Acc<T>>(vals[k]);
    }
    if (x[static_cast<std::size_t>(i)]) acc = -acc;
    return narrow<T>(acc, "delta_energy");
}

template <class T>
DeltaCache<T> build_delta_cache(const QuboModel<T>& model, const Assignment& x) {
    check_length(x.size(), model.size(), "build_delta_cache");
    DeltaCache<T> cache;
    cache.deltas.resize(static_cast<std::size_t>(model.size()));
    for (Index i = 0; i < model.size(); ++i) {
        cache.deltas[static_cast<std::size_t>(i)] = delta_energy(model, x, i);
    }
    return cache;
}

template <class T>
void apply_flip(const QuboModel<T>& model, Assignment& x, Index i, DeltaCache<T>& cache,
                T& energy) {
    check_length(x.size(), model.size(), "apply_flip");
    check_index(i, model.size(), "apply_flip");
    const std::size_t si = static_cast<std::size_t>(i);
    const T di = cache.deltas[si];

    if constexpr (std::is_same_v<T, std::int64_t>) {
        if (di == std::numeric_limits<std::int64_t>::min()) {
            throw std::overflow_error("apply_flip: delta exceeds 64-bit signed range");
        }
        std::int64_t next;
        if (__builtin_add_overflow(energy, di, &next)) {
            throw std::overflow_error("apply_flip: energy exceeds 64-bit signed range");
        }
        energy = next;
    } else {
        energy += di;
    }

    const bool xi_old = x[si] != 0;
    const auto cols = model.row_neighbors(i);
    const auto vals = model.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t sj = static_cast<std::size_t>(cols[k]);
        // deltas[j] moves by q_ij * (1 - 2 x_j) * (1 - 2 x_i_old).
        const bool add = (x[sj] != 0) == xi_old;
        T& dj = cache.deltas[sj];
        if constexpr (std::is_same_v<T, std::int64_t>) {
            std::int64_t next;
            const bool bad = add ? __builtin_add_overflow(dj, vals[k], &next)
                                 : __builtin_sub_overflow(dj, vals[k], &next);
            if (bad) throw std::overflow_error("apply_flip: delta exceeds 64-bit signed range");
            dj = next;
        } else {
            dj = add ? dj + vals[k] : dj - vals[k];
        }
    }
    cache.deltas[si] = -di;
    x[si] ^= 1;
}

double IsingModel::energy(const Assignment& x) const {
    check_length(x.size(), n, "IsingModel::energy");
    double acc = constant;
    for (Index i = 0; i < n; ++i) {
        const double s = x[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
        acc -= fields[static_cast<std::size_t>(i)] * s;
    }
    for (const auto& c : couplings) {
        const double si = x[static_cast<std::size_t>(c.i)] ? 1.0 : -1.0;
        const double sj = x[static_cast<std::size_t>(c.j)] ? 1.0 : -1.0;
        acc -= c.value * si * sj;
    }
    return acc;
}

template <class T>
IsingModel to_ising(const QuboModel<T>& model) {
    IsingModel out;
    out.n = model.size();
    out.fields.resize(static_cast<std::size_t>(model.size()));

    // h_i = -(2 q_ii + sum_j q_ij) / 4, constant = (2 sum q_ii + sum_{i>j} q_ij) / 4.
    Acc<T> const_num = 0;
    for (Index i = 0; i < model.size(); ++i) {
        Acc<T> num = 2 * static_cast<Acc<T>>(model.diagonal(i));
        const auto cols = model.row_neighbors(i);
        const auto vals = model.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            num += static_cast<Acc<T>>(vals[k]);
            if (cols[k] < i) {
                out.couplings.push_back({i, cols[k], -static_cast<double>(vals[k]) / 4.0});
            }
        }
        out.fields[static_cast<std::size_t>(i)] = -static_cast<double>(narrow<T>(num, "to_ising")) / 4.0;
        const_num += 2 * static_cast<Acc<T>>(model.diagonal(i));
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] < i) const_num += static_cast<Acc<T>>(vals[k]);
        }
    }
    out.constant = static_cast<double>(narrow<T>(const_num, "to_ising")) / 4.0;
    return out;
}

FromIsingResult from_ising(const IsingModel& ising) {
    if (ising.fields.size() != static_cast<std::size_t>(ising.n)) {
        throw std::invalid_argument("from_ising: field count does not match n");
    }
    if (!std::isfinite(ising.constant)) {
        throw std::invalid_argument("from_ising: constant is not finite");
    }
    std::vector<double> diag(static_cast<std::size_t>(ising.n));
    for (Index i = 0; i < ising.n; ++i) {
        diag[static_cast<std::size_t>(i)] = -2.0 * ising.fields[static_cast<std::size_t>(i)];
    }
    std::vector<QuboTerm<double>> terms;
    double coupling_sum = 0.0;
    for (const auto& c : ising.couplings) {
        if (c.i == c.j) throw std::invalid_argument("from_ising: self-coupling");
        check_index(c.i, ising.n, "from_ising");
        check_index(c.j, ising.n, "from_ising");
        terms.push_back({c.i, c.j, -4.0 * c.value});
        diag[static_cast<std::size_t>(c.i)] += 2.0 * c.value;
        diag[static_cast<std::size_t>(c.j)] += 2.0 * c.value;
        coupling_sum += c.value;
    }
    for (Index i = 0; i < ising.n; ++i) {
        terms.push_back({i, i, diag[static_cast<std::size_t>(i)]});
    }
    double field_sum = 0.0;
    for (double h : ising.fields) field_sum += h;
    return {QuboModel<double>(ising.n, terms), ising.constant + field_sum - coupling_sum};
}

template class QuboModel<std::int64_t>;
template class QuboModel<double>;

template std::int64_t evaluate(const QuboModel<std::int64_t>&, const Assignment&);
template double evaluate(const QuboModel<double>&, const Assignment&);
template std::int64_t delta_energy(const QuboModel<std::int64_t>&, const Assignment&, Index);
template double delta_energy(const QuboModel<double>&, const Assignment&, Index);
template DeltaCache<std::int64_t> build_delta_cache(const QuboModel<std::int64_t>&,
                                                    const Assignment&);
template DeltaCache<double> build_delta_cache(const QuboModel<double>&, const Assignment&);
template void apply_flip(const QuboModel<std::int64_t>&, Assignment&, Index,
                         DeltaCache<std::int64_t>&, std::int64_t&);
template void apply_flip(const QuboModel<double>&, Assignment&, Index, DeltaCache<double>&,
                         double&);
template IsingModel to_ising(const QuboModel<std::int64_t>&);
template IsingModel to_ising(const QuboModel<double>&);

}  // namespace paratrial
