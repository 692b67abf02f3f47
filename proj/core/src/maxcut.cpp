#include "paratrial/maxcut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace paratrial {

namespace {

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

template <class T>
long double magnitude(T v) {
    return std::fabs(static_cast<long double>(v));
}

}  // namespace

template <class T>
WeightedGraph<T>::WeightedGraph(Index n_vertices, std::vector<Edge<T>> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("WeightedGraph: negative vertex count");
    for (auto& e : edges_) {
        if (e.u == e.v) {
            throw std::invalid_argument("WeightedGraph: self-loop at vertex " +
                                        std::to_string(e.u));
        }
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_) {
            throw std::invalid_argument("WeightedGraph: edge (" + std::to_string(e.u) + ", " +
                                        std::to_string(e.v) + ") out of range for n = " +
                                        std::to_string(n_));
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge<T>& a, const Edge<T>& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t k = 1; k < edges_.size(); ++k) {
        if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
            throw std::invalid_argument("WeightedGraph: duplicate edge (" +
                                        std::to_string(edges_[k].u) + ", " +
                                        std::to_string(edges_[k].v) + ")");
        }
    }
}

int select_bit_width(QuantizationProfile profile, Index n) {
    switch (profile) {
        case QuantizationProfile::generation2:
            return n > 4096 ? 15 : 63;
        case QuantizationProfile::generation3:
            return 47;
        case QuantizationProfile::full_width:
        default:
            return 63;
    }
}

template <class T>
T cut_value(const WeightedGraph<T>& graph, const Assignment& x) {
    if (x.size() != static_cast<std::size_t>(graph.vertex_count())) {
        throw std::invalid_argument("cut_value: assignment length does not match vertex count");
    }
    Acc<T> acc = 0;
    for (const auto& e : graph.edges()) {
        if (x[static_cast<std::size_t>(e.u)] != x[static_cast<std::size_t>(e.v)]) {
            acc += static_cast<Acc<T>>(e.weight);
        }
    }
    return narrow<T>(acc, "cut_value");
}

template <class T>
QuboModel<T> maxcut_to_qubo(const WeightedGraph<T>& graph) {
    const Index n = graph.vertex_count();
    std::vector<Acc<T>> degree_weight(static_cast<std::size_t>(n), Acc<T>{0});
    std::vector<QuboTerm<T>> terms;
    terms.reserve(graph.edge_count() + static_cast<std::size_t>(n));
    for (const auto& e : graph.edges()) {
        degree_weight[static_cast<std::size_t>(e.u)] += static_cast<Acc<T>>(e.weight);
        degree_weight[static_cast<std::size_t>(e.v)] += static_cast<Acc<T>>(e.weight);
        terms.push_back({e.v, e.u, narrow<T>(2 * static_cast<Acc<T>>(e.weight), "maxcut_to_qubo")});
    }
    for (Index i = 0; i < n; ++i) {
        terms.push_back({i, i, narrow<T>(-degree_weight[static_cast<std::size_t>(i)],
                                         "maxcut_to_qubo")});
    }
    return QuboModel<T>(n, terms);
}

template <class T>
MaxcutEmbedding<T> qubo_to_maxcut(const QuboModel<T>& model) {
    const Index n = model.size();
    std::vector<Edge<double>> edges;
    double constant = 0.0;
    for (Index i = 0; i < n; ++i) {
        // Auxiliary weight a_i = q_ii + (1/2) sum_j q_ij makes the linear
        // terms come out of the cut against the pinned vertex 0.
        double aux = static_cast<double>(model.diagonal(i));
        const auto cols = model.row_neighbors(i);
        const auto vals = model.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            aux += static_cast<double>(vals[k]) / 2.0;
            if (cols[k] < i) {
                edges.push_back({cols[k] + 1, i + 1, static_cast<double>(vals[k]) / 2.0});
            }
        }
        if (aux != 0.0) edges.push_back({0, i + 1, aux});
        constant += aux;
    }
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [](const Edge<double>& e) { return e.weight == 0.0; }),
                edges.end());
    return {WeightedGraph<double>(n + 1, std::move(edges)), constant};
}

template <class T>
std::pair<QuboModel<T>, PreprocessReport<T>> preprocess(const QuboModel<T>& model) {
    const Index n = model.size();
    PreprocessReport<T> report;
    report.original_n = n;

    std::vector<std::uint8_t> alive(static_cast<std::size_t>(n), 1);
    for (Index i = 0; i < n; ++i) {
        if (model.diagonal(i) == T{0} && model.degree(i) == 0) {
            alive[static_cast<std::size_t>(i)] = 0;
            report.removed.push_back(i);
        }
    }

    std::optional<Index> heaviest;
    for (Index i = 0; i < n; ++i) {
        if (!alive[static_cast<std::size_t>(i)]) continue;
        if (!heaviest || magnitude(model.diagonal(i)) > magnitude(model.diagonal(*heaviest))) {
            heaviest = i;
        }
    }

    std::uint8_t side = 0;
    if (heaviest) {
        side = model.diagonal(*heaviest) < T{0} ? 1 : 0;
        report.fixed = {*heaviest, side};
        if (side == 1) report.constant = model.diagonal(*heaviest);
    }

    std::vector<Index> to_reduced(static_cast<std::size_t>(n), -1);
    for (Index i = 0; i < n; ++i) {
        if (!alive[static_cast<std::size_t>(i)] || (heaviest && i == *heaviest)) continue;
        to_reduced[static_cast<std::size_t>(i)] = static_cast<Index>(report.index_map.size());
        report.index_map.push_back(i);
    }
    const Index reduced_n = static_cast<Index>(report.index_map.size());

    std::vector<Acc<T>> diag(static_cast<std::size_t>(reduced_n), Acc<T>{0});
    std::vector<QuboTerm<T>> terms;
    for (const auto& t : model.terms()) {
        const bool drops_i = heaviest && t.i == *heaviest;
        const bool drops_j = heaviest && t.j == *heaviest;
        if (t.i == t.j) {
            if (drops_i) continue;  // folded into the constant above
            diag[static_cast<std::size_t>(to_reduced[static_cast<std::size_t>(t.i)])] +=
                static_cast<Acc<T>>(t.value);
        } else if (drops_i || drops_j) {
            if (side == 1) {
                const Index other = drops_i ? t.j : t.i;
                diag[static_cast<std::size_t>(to_reduced[static_cast<std::size_t>(other)])] +=
                    static_cast<Acc<T>>(t.value);
            }
        } else {
            terms.push_back({to_reduced[static_cast<std::size_t>(t.i)],
                             to_reduced[static_cast<std::size_t>(t.j)], t.value});
        }
    }
    for (Index r = 0; r < reduced_n; ++r) {
        terms.push_back({r, r, narrow<T>(diag[static_cast<std::size_t>(r)], "preprocess")});
    }
    return {QuboModel<T>(reduced_n, terms), std::move(report)};
}

template <class T>
Assignment reconstruct(const PreprocessReport<T>& report, const Assignment& reduced) {
    if (reduced.size() != report.index_map.size()) {
        throw std::invalid_argument("reconstruct: assignment length does not match index map");
    }
    Assignment full(static_cast<std::size_t>(report.original_n), 0);
    if (report.fixed) {
        full[static_cast<std::size_t>(report.fixed->first)] = report.fixed->second;
    }
    for (std::size_t r = 0; r < reduced.size(); ++r) {
        full[static_cast<std::size_t>(report.index_map[r])] = reduced[r];
    }
    return full;
}

template <class T>
std::pair<QuboModel<std::int64_t>, QuantizationSpec> quantize(const QuboModel<T>& model,
                                                              int bit_width) {
    if (bit_width != 15 && bit_width != 47 && bit_width != 63) {
        throw std::invalid_argument("quantize: bit width must be 15, 47 or 63");
    }
    const auto terms = model.terms();
    long double max_abs = 0.0L;
    for (const auto& t : terms) max_abs = std::max(max_abs, magnitude(t.value));
    if (max_abs == 0.0L) {
        throw std::invalid_argument("quantize: model has no nonzero coefficient");
    }

    const long double scale = std::ldexp(1.0L, bit_width) / max_abs;
    QuantizationSpec spec;
    spec.bit_width = bit_width;
    spec.scale_factor = static_cast<double>(scale);

    std::vector<QuboTerm<std::int64_t>> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
        const long double scaled = std::floor(static_cast<long double>(t.value) * scale);
        std::int64_t q;
        if (scaled >= static_cast<long double>(std::numeric_limits<std::int64_t>::max())) {
            q = std::numeric_limits<std::int64_t>::max();  // the +2^63 corner at full width
        } else if (scaled <= static_cast<long double>(std::numeric_limits<std::int64_t>::min())) {
            q = std::numeric_limits<std::int64_t>::min();
        } else {
            q = static_cast<std::int64_t>(scaled);
        }
        if (q == 0) {
            ++spec.lost_terms;
        } else {
            out.push_back({t.i, t.j, q});
        }
    }
    return {QuboModel<std::int64_t>(model.size(), out), spec};
}

template <class T>
double density(const WeightedGraph<T>& graph) {
    const Index n = graph.vertex_count();
    if (n < 2) throw std::invalid_argument("density: need at least 2 vertices");
    const double possible = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(graph.edge_count()) / possible;
}

template class WeightedGraph<std::int64_t>;
template class WeightedGraph<double>;

template std::int64_t cut_value(const WeightedGraph<std::int64_t>&, const Assignment&);
template double cut_value(const WeightedGraph<double>&, const Assignment&);
template QuboModel<std::int64_t> maxcut_to_qubo(const WeightedGraph<std::int64_t>&);
template QuboModel<double> maxcut_to_qubo(const WeightedGraph<double>&);
template MaxcutEmbedding<std::int64_t> qubo_to_maxcut(const QuboModel<std::int64_t>&);
template MaxcutEmbedding<double> qubo_to_maxcut(const QuboModel<double>&);
template std::pair<QuboModel<std::int64_t>, PreprocessReport<std::int64_t>> preprocess(
    const QuboModel<std::int64_t>&);
template std::pair<QuboModel<double>, PreprocessReport<double>> preprocess(
    const QuboModel<double>&);
template Assignment reconstruct(const PreprocessReport<std::int64_t>&, const Assignment&);
template Assignment reconstruct(const PreprocessReport<double>&, const Assignment&);
template std::pair<QuboModel<std::int64_t>, QuantizationSpec> quantize(
    const QuboModel<std::int64_t>&, int);
template std::pair<QuboModel<std::int64_t>, QuantizationSpec> quantize(const QuboModel<double>&,
                                                                       int);
template double density(const WeightedGraph<std::int64_t>&);
template double density(const WeightedGraph<double>&);

}  // namespace paratrial
