#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "paratrial/common.hpp"
#include "paratrial/qubo.hpp"

namespace paratrial {

template <class T>
struct Edge {
    Index u;  // u < v
    Index v;
    T weight;
};

/// Undirected weighted graph in edge-list form (the shape Max-Cut instances
/// arrive in). No self-loops, no duplicate pairs.
template <class T>
class WeightedGraph {
public:
    WeightedGraph() : n_(0) {}

    /// Edges may be given in either endpoint order; they are canonicalized to
    /// u < v. Throws std::invalid_argument on self-loops, duplicates, or
    /// out-of-range endpoints.
    WeightedGraph(Index n_vertices, std::vector<Edge<T>> edges);

    Index vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge<T>>& edges() const { return edges_; }

    static constexpr ValueKind value_kind() { return kind_of<T>(); }

private:
    Index n_;
    std::vector<Edge<T>> edges_;
};

/// An assignment together with its verified cut value (x_i = 1 puts vertex i
/// in the S side).
template <class T>
struct CutCertificate {
    Assignment assignment;
    T value;
};

/// What preprocess() did: at most one variable pinned, zero-coefficient
/// variables dropped, and the index map from reduced to original indices.
template <class T>
struct PreprocessReport {
    Index original_n = 0;
    std::optional<std::pair<Index, std::uint8_t>> fixed;  // (index, assigned side)
    std::vector<Index> removed;
    std::vector<Index> index_map;  // reduced index -> original index
    /// evaluate(original, reconstruct(report, y)) == evaluate(reduced, y) + constant.
    T constant = T{0};
};

struct QuantizationSpec {
    int bit_width = 0;          // one of 15, 47, 63
    double scale_factor = 0.0;  // 2^bit_width / max |q|
    std::size_t lost_terms = 0; // nonzero inputs floored to zero
};

/// Integer-hardware emulation profiles; each picks a coefficient bit width.
enum class QuantizationProfile { generation2, generation3, full_width };

/// generation2 narrows to 15 bits above 4096 variables, generation3 always
/// uses 47, full_width always 63.
int select_bit_width(QuantizationProfile profile, Index n);

/// Total weight of edges crossing the partition induced by x.
template <class T>
T cut_value(const WeightedGraph<T>& graph, const Assignment& x);

/// Minimization form of Max-Cut: for every assignment x,
///   evaluate(result, x) == -cut_value(graph, x).
template <class T>
QuboModel<T> maxcut_to_qubo(const WeightedGraph<T>& graph);

template <class T>
struct MaxcutEmbedding {
    /// Graph on n+1 vertices; vertex 0 is the auxiliary vertex pinned to
    /// side 1, original variable i maps to vertex i+1.
    WeightedGraph<double> graph;
    /// For every assignment x of the original n variables,
    ///   cut_value(graph, [1, x]) == -evaluate(model, x) + constant.
    double constant;
};

/// Embeds a general QUBO into Max-Cut via one auxiliary vertex. Weights are
/// emitted as doubles because the pair weights are q_ij / 2.
template <class T>
MaxcutEmbedding<T> qubo_to_maxcut(const QuboModel<T>& model);

/// Pins the variable with the largest |linear coefficient| (ties: lowest
/// index) to the side minimizing its fixed contribution and drops variables
/// with no nonzero coefficients.
template <class T>
std::pair<QuboModel<T>, PreprocessReport<T>> preprocess(const QuboModel<T>& model);

/// Expands a reduced assignment back to the original index space. Removed
/// variables are set to 0; they carry no coefficients either way.
template <class T>
Assignment reconstruct(const PreprocessReport<T>& report, const Assignment& reduced);

/// Scales coefficients by 2^bit_width / max |q| and floors them to integers,
/// the conversion integer-only annealing hardware applies to float inputs.
/// Requires at least one nonzero coefficient and bit_width in {15, 47, 63}.
template <class T>
std::pair<QuboModel<std::int64_t>, QuantizationSpec> quantize(const QuboModel<T>& model,
                                                              int bit_width);

/// |E| / (n(n-1)/2). Requires n >= 2.
template <class T>
double density(const WeightedGraph<T>& graph);

}  // namespace paratrial
