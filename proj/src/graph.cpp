#include "rankclose/graph.hpp"
#include "rankclose/report.hpp"
#include "rankclose/rng.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>

namespace rankclose {

namespace {

Index vertex_id(const Mask &mask, Vertex v) {
    if (v.side == Vertex::Side::row) {
        if (v.index < 0 || v.index >= mask.rows())
            throw InputError("row vertex out of range");
        return v.index;
    }
    if (v.index < 0 || v.index >= mask.cols())
        throw InputError("column vertex out of range");
    return mask.rows() + v.index;
}

// Unit-capacity residual network of the undirected adjacency graph. Each mask
// entry is a pair of opposite arcs that serve as each other's reverse.
class FlowNetwork {
  public:
    explicit FlowNetwork(const Mask &mask)
        : rows_(mask.rows()), nodes_(mask.rows() + mask.cols()), head_(static_cast<std::size_t>(nodes_)) {
        for (const auto &e : mask.entries()) {
            const Index u = e.row, v = rows_ + e.col;
            const auto a = static_cast<Index>(arcs_.size());
            arcs_.push_back({v, 1, a + 1, e});
            arcs_.push_back({u, 1, a, e});
            head_[static_cast<std::size_t>(u)].push_back(a);
            head_[static_cast<std::size_t>(v)].push_back(a + 1);
        }
    }

    void reset() {
        for (auto &a : arcs_)
            a.cap = 1;
    }

    Index run(Index s, Index t, Index limit) {
        reset();
        Index flow = 0;
        std::vector<Index> parent_arc(static_cast<std::size_t>(nodes_));
        while (limit < 0 || flow < limit) {
            std::fill(parent_arc.begin(), parent_arc.end(), Index{-1});
            std::deque<Index> queue{s};
            parent_arc[static_cast<std::size_t>(s)] = static_cast<Index>(arcs_.size());
            while (!queue.empty() && parent_arc[static_cast<std::size_t>(t)] < 0) {
                const Index u = queue.front();
                queue.pop_front();
                for (Index a : head_[static_cast<std::size_t>(u)]) {
                    const auto &arc = arcs_[static_cast<std::size_t>(a)];
                    if (arc.cap > 0 && parent_arc[static_cast<std::size_t>(arc.to)] < 0) {
                        parent_arc[static_cast<std::size_t>(arc.to)] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if (parent_arc[static_cast<std::size_t>(t)] < 0)
                break;
            for (Index v = t; v != s;) {
                auto &arc = arcs_[static_cast<std::size_t>(parent_arc[static_cast<std::size_t>(v)])];
                arc.cap -= 1;
                arcs_[static_cast<std::size_t>(arc.rev)].cap += 1;
                v = arcs_[static_cast<std::size_t>(arc.rev)].to;
            }
            ++flow;
        }
        return flow;
    }

    /// Edges leaving the residual-reachable side of `s`. Valid after an unlimited run.
    std::vector<Entry> min_cut(Index s) const {
        std::vector<char> seen(static_cast<std::size_t>(nodes_), 0);
        std::deque<Index> queue{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!queue.empty()) {
            const Index u = queue.front();
            queue.pop_front();
            for (Index a : head_[static_cast<std::size_t>(u)]) {
                const auto &arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
                    seen[static_cast<std::size_t>(arc.to)] = 1;
                    queue.push_back(arc.to);
                }
            }
        }
        std::vector<Entry> cut;
        for (std::size_t a = 0; a < arcs_.size(); a += 2) {
            const auto &arc = arcs_[a];
            const Index u = arc.entry.row, v = rows_ + arc.entry.col;
            if (seen[static_cast<std::size_t>(u)] != seen[static_cast<std::size_t>(v)])
                cut.push_back(arc.entry);
        }
        std::sort(cut.begin(), cut.end());
        return cut;
    }

    Index nodes() const noexcept { return nodes_; }

  private:
    struct Arc {
        Index to;
        Index cap;
        Index rev;
        Entry entry;
    };

    Index rows_;
    Index nodes_;
    std::vector<std::vector<Index>> head_;
    std::vector<Arc> arcs_;
};

Index block_dimension(Index m_i, Index n_i, Index rank) {
    return m_i * n_i - std::max<Index>(0, m_i - rank) * std::max<Index>(0, n_i - rank);
}

// Vertex labelling used by the partition searches: rows 0..m-1, columns m..m+n-1.
struct PartitionGraph {
    Index rows = 0;
    Index vertices = 0;
    std::vector<std::vector<Index>> adjacency;

    explicit PartitionGraph(const Mask &mask)
        : rows(mask.rows()), vertices(mask.rows() + mask.cols()),
          adjacency(static_cast<std::size_t>(vertices)) {
        for (const auto &e : mask.entries()) {
            adjacency[static_cast<std::size_t>(e.row)].push_back(rows + e.col);
            adjacency[static_cast<std::size_t>(rows + e.col)].push_back(e.row);
        }
    }

    bool is_row(Index v) const noexcept { return v < rows; }
};

BipartitePartition partition_from_labels(const PartitionGraph &g, const std::vector<Index> &label) {
    std::vector<Index> ids(label.begin(), label.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    BipartitePartition p;
    p.blocks.resize(ids.size());
    for (Index v = 0; v < g.vertices; ++v) {
        const auto b = static_cast<std::size_t>(
            std::lower_bound(ids.begin(), ids.end(), label[static_cast<std::size_t>(v)]) - ids.begin());
        if (g.is_row(v))
            p.blocks[b].rows.push_back(v);
        else
            p.blocks[b].cols.push_back(v - g.rows);
    }
    return p;
}

// Minimises sum_blocks (d(m_B, n_B) - |E(B)|) over all set partitions via the
// standard subset dynamic program. A partition violates the bound iff
// alpha + minimum < r (m + n - r).
std::optional<BipartitePartition> exhaustive_partition_search(const Mask &mask, Index rank) {
    const PartitionGraph g(mask);
    const auto V = static_cast<unsigned>(g.vertices);
    const std::uint32_t full = (V == 32) ? ~0u : ((1u << V) - 1u);
    const std::size_t count = std::size_t{1} << V;

    std::vector<std::uint32_t> adj(V, 0);
    for (unsigned v = 0; v < V; ++v)
        for (Index w : g.adjacency[v])
            adj[v] |= 1u << w;
    const std::uint32_t row_bits = (1u << g.rows) - 1u;

    std::vector<std::int32_t> cost(count);
    std::vector<std::int32_t> edges(count, 0);
    cost[0] = 0;
    for (std::uint32_t s = 1; s < count; ++s) {
        const unsigned v = static_cast<unsigned>(std::countr_zero(s));
        const std::uint32_t rest = s & (s - 1);
        edges[s] = edges[rest] + std::popcount(adj[v] & rest);
        const Index m_b = std::popcount(s & row_bits);
        const Index n_b = std::popcount(s & ~row_bits);
        cost[s] = static_cast<std::int32_t>(block_dimension(m_b, n_b, rank)) - edges[s];
    }
    edges.clear();
    edges.shrink_to_fit();

    std::vector<std::int32_t> best(count, 0);
    std::vector<std::uint32_t> choice(count, 0);
    for (std::uint32_t s = 1; s < count; ++s) {
        const std::uint32_t low = s & (~s + 1);
        const std::uint32_t rest = s ^ low;
        std::int32_t best_val = std::numeric_limits<std::int32_t>::max();
        std::uint32_t best_block = s;
        for (std::uint32_t t = rest;; t = (t - 1) & rest) {
            const std::uint32_t b = t | low;
            const std::int32_t val = cost[b] + best[s ^ b];
            if (val < best_val) {
                best_val = val;
                best_block = b;
            }
            if (t == 0)
                break;
        }
        best[s] = best_val;
        choice[s] = best_block;
    }

    const Index target = rank * (mask.rows() + mask.cols() - rank);
    if (mask.edge_count() + best[full] >= target)
        return std::nullopt;

    std::vector<Index> label(V, 0);
    Index next = 0;
    for (std::uint32_t s = full; s != 0; s ^= choice[s], ++next)
        for (std::uint32_t b = choice[s]; b != 0; b &= b - 1)
            label[static_cast<std::size_t>(std::countr_zero(b))] = next;
    return partition_from_labels(g, label);
}

// Sum over blocks of (d(m_B, n_B) - |E(B)|) for a labelling with labels in [0, V).
class LabelledPartition {
  public:
    LabelledPartition(const PartitionGraph &g, Index rank, std::vector<Index> label)
        : g_(g), rank_(rank), label_(std::move(label)),
          m_(static_cast<std::size_t>(g.vertices), 0), n_(m_), e_(m_) {
        for (Index v = 0; v < g.vertices; ++v) {
            const auto b = static_cast<std::size_t>(label_[static_cast<std::size_t>(v)]);
            (g.is_row(v) ? m_[b] : n_[b]) += 1;
            for (Index w : g.adjacency[static_cast<std::size_t>(v)])
                if (w > v && label_[static_cast<std::size_t>(w)] == label_[static_cast<std::size_t>(v)])
                    e_[b] += 1;
        }
    }

    Index total() const {
        Index t = 0;
        for (std::size_t b = 0; b < m_.size(); ++b)
            t += block_cost(m_[b], n_[b], e_[b]);
        return t;
    }

    /// Greedy single-vertex moves until no move lowers the total. Returns the total.
    Index descend(Rng &rng, int max_passes) {
        const auto V = static_cast<std::size_t>(g_.vertices);
        std::vector<Index> order(V);
        std::iota(order.begin(), order.end(), Index{0});
        std::vector<Index> into(V, 0);
        for (int pass = 0; pass < max_passes; ++pass) {
            std::shuffle(order.begin(), order.end(), rng);
            bool improved = false;
            for (Index v : order) {
                const auto from = static_cast<std::size_t>(label_[static_cast<std::size_t>(v)]);
                for (Index w : g_.adjacency[static_cast<std::size_t>(v)])
                    into[static_cast<std::size_t>(label_[static_cast<std::size_t>(w)])] += 1;
                const bool row = g_.is_row(v);
                const Index before_from = block_cost(m_[from], n_[from], e_[from]);
                const Index after_from = block_cost(m_[from] - (row ? 1 : 0), n_[from] - (row ? 0 : 1),
                                                    e_[from] - into[from]);
                Index best_delta = 0;
                std::size_t best_to = from;
                const std::size_t empty_block = first_empty();
                for (std::size_t to = 0; to < V; ++to) {
                    if (to == from)
                        continue;
                    // empty blocks are all equivalent, so try only the first one
                    if (m_[to] + n_[to] == 0 && to != empty_block)
                        continue;
                    const Index before_to = block_cost(m_[to], n_[to], e_[to]);
                    const Index after_to =
                        block_cost(m_[to] + (row ? 1 : 0), n_[to] + (row ? 0 : 1), e_[to] + into[to]);
                    const Index delta = after_from + after_to - before_from - before_to;
                    if (delta < best_delta) {
                        best_delta = delta;
                        best_to = to;
                    }
                }
                if (best_to != from) {
                    (row ? m_[from] : n_[from]) -= 1;
                    (row ? m_[best_to] : n_[best_to]) += 1;
                    e_[from] -= into[from];
                    e_[best_to] += into[best_to];
                    label_[static_cast<std::size_t>(v)] = static_cast<Index>(best_to);
                    improved = true;
                }
                for (Index w : g_.adjacency[static_cast<std::size_t>(v)])
                    into[static_cast<std::size_t>(label_[static_cast<std::size_t>(w)])] = 0;
                into[from] = 0;
            }
            if (!improved)
                break;
        }
        return total();
    }

    const std::vector<Index> &labels() const noexcept { return label_; }

  private:
    Index block_cost(Index m, Index n, Index e) const {
        return (m + n == 0) ? 0 : block_dimension(m, n, rank_) - e;
    }

    std::size_t first_empty() const {
        for (std::size_t b = 0; b < m_.size(); ++b)
            if (m_[b] + n_[b] == 0)
                return b;
        return m_.size();
    }

    const PartitionGraph &g_;
    Index rank_;
    std::vector<Index> label_;
    std::vector<Index> m_, n_, e_;
};

std::vector<Index> component_labels(const PartitionGraph &g) {
    std::vector<Index> label(static_cast<std::size_t>(g.vertices), -1);
    Index next = 0;
    for (Index s = 0; s < g.vertices; ++s) {
        if (label[static_cast<std::size_t>(s)] >= 0)
            continue;
        std::vector<Index> stack{s};
        label[static_cast<std::size_t>(s)] = next;
        while (!stack.empty()) {
            const Index u = stack.back();
            stack.pop_back();
            for (Index w : g.adjacency[static_cast<std::size_t>(u)])
                if (label[static_cast<std::size_t>(w)] < 0) {
                    label[static_cast<std::size_t>(w)] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return label;
}

std::optional<BipartitePartition> sampled_partition_search(const Mask &mask, Index rank,
                                                           std::uint64_t budget, std::uint64_t seed) {
    const PartitionGraph g(mask);
    const Index V = g.vertices;
    const Index target = rank * (mask.rows() + mask.cols() - rank);
    const auto violates = [&](Index total) { return mask.edge_count() + total < target; };

    std::vector<std::vector<Index>> seeds_labels;
    {
        std::vector<Index> singletons(static_cast<std::size_t>(V));
        std::iota(singletons.begin(), singletons.end(), Index{0});
        seeds_labels.push_back(std::move(singletons));
    }
    const auto components = component_labels(g);
    seeds_labels.push_back(components);
    const Index n_components = *std::max_element(components.begin(), components.end()) + 1;
    for (Index c = 0; c < n_components && n_components > 1; ++c) {
        std::vector<Index> split(static_cast<std::size_t>(V));
        for (Index v = 0; v < V; ++v)
            split[static_cast<std::size_t>(v)] = components[static_cast<std::size_t>(v)] == c ? 0 : 1;
        seeds_labels.push_back(std::move(split));
    }

    Rng rng(seed);
    for (const auto &labels : seeds_labels) {
        LabelledPartition p(g, rank, labels);
        if (violates(p.total()))
            return partition_from_labels(g, p.labels());
        if (violates(p.descend(rng, 32)))
            return partition_from_labels(g, p.labels());
    }

    const auto per_restart = static_cast<std::uint64_t>(64 * V * V);
    const std::uint64_t restarts = std::clamp<std::uint64_t>(budget / std::max<std::uint64_t>(per_restart, 1), 8, 512);
    for (std::uint64_t k = 0; k < restarts; ++k) {
        const Index blocks = std::uniform_int_distribution<Index>(2, std::max<Index>(2, std::min<Index>(V, 8)))(rng);
        std::uniform_int_distribution<Index> pick(0, blocks - 1);
        std::vector<Index> labels(static_cast<std::size_t>(V));
        for (auto &l : labels)
            l = pick(rng);
        LabelledPartition p(g, rank, std::move(labels));
        if (violates(p.descend(rng, 32)))
            return partition_from_labels(g, p.labels());
    }
    return std::nullopt;
}

} // namespace

void check_rank(const Mask &mask, Index rank) {
    if (rank < 1 || rank > std::min(mask.rows(), mask.cols()))
        throw InputError("rank " + std::to_string(rank) + " outside [1, " +
                         std::to_string(std::min(mask.rows(), mask.cols())) + "]");
}

bool edge_count_condition(const Mask &mask, Index rank) {
    check_rank(mask, rank);
    return mask.edge_count() >= rank * (mask.rows() + mask.cols() - rank);
}

DegreeCheck min_degree_condition(const Mask &mask, Index rank) {
    check_rank(mask, rank);
    DegreeCheck out;
    const auto rd = mask.row_degrees();
    const auto cd = mask.col_degrees();
    for (std::size_t i = 0; i < rd.size(); ++i)
        if (rd[i] < rank)
            out.violating.push_back(Vertex::row(static_cast<Index>(i)));
    for (std::size_t j = 0; j < cd.size(); ++j)
        if (cd[j] < rank)
            out.violating.push_back(Vertex::col(static_cast<Index>(j)));
    out.ok = out.violating.empty();
    return out;
}

Index max_flow(const Mask &mask, Vertex source, Vertex sink, Index limit) {
    const Index s = vertex_id(mask, source);
    const Index t = vertex_id(mask, sink);
    if (s == t)
        throw InputError("max_flow source equals sink");
    FlowNetwork net(mask);
    return net.run(s, t, limit);
}

ConnectivityCheck is_r_connected(const Mask &mask, Index rank) {
    check_rank(mask, rank);
    FlowNetwork net(mask);
    ConnectivityCheck out;
    out.min_flow = rank;
    for (Index t = 1; t < net.nodes(); ++t) {
        const Index f = net.run(0, t, rank);
        if (f < out.min_flow) {
            out.min_flow = f;
            out.cut = net.min_cut(0);
            if (f == 0)
                break;
        }
    }
    out.ok = out.min_flow >= rank;
    return out;
}

Index edge_connectivity(const Mask &mask) {
    FlowNetwork net(mask);
    if (net.nodes() < 2)
        return 0;
    Index best = std::numeric_limits<Index>::max();
    for (Index t = 1; t < net.nodes(); ++t)
        best = std::min(best, net.run(0, t, -1));
    return best;
}

void BipartitePartition::validate(Index rows, Index cols) const {
    std::vector<int> row_seen(static_cast<std::size_t>(rows), 0);
    std::vector<int> col_seen(static_cast<std::size_t>(cols), 0);
    for (const auto &b : blocks) {
        if (b.rows.empty() && b.cols.empty())
            throw InputError("partition has an empty block");
        for (Index i : b.rows) {
            if (i < 0 || i >= rows || row_seen[static_cast<std::size_t>(i)]++)
                throw InputError("partition rows overlap or are out of range");
        }
        for (Index j : b.cols) {
            if (j < 0 || j >= cols || col_seen[static_cast<std::size_t>(j)]++)
                throw InputError("partition columns overlap or are out of range");
        }
    }
    if (std::find(row_seen.begin(), row_seen.end(), 0) != row_seen.end() ||
        std::find(col_seen.begin(), col_seen.end(), 0) != col_seen.end())
        throw InputError("partition does not cover every vertex");
}

PartitionBound partition_bound(const Mask &mask, Index rank, const BipartitePartition &partition) {
    check_rank(mask, rank);
    partition.validate(mask.rows(), mask.cols());
    std::vector<std::size_t> row_block(static_cast<std::size_t>(mask.rows()));
    std::vector<std::size_t> col_block(static_cast<std::size_t>(mask.cols()));
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        for (Index i : partition.blocks[b].rows)
            row_block[static_cast<std::size_t>(i)] = b;
        for (Index j : partition.blocks[b].cols)
            col_block[static_cast<std::size_t>(j)] = b;
    }
    PartitionBound out;
    for (const auto &e : mask.entries())
        if (row_block[static_cast<std::size_t>(e.row)] != col_block[static_cast<std::size_t>(e.col)])
            ++out.cross_edges;
    out.required = rank * (mask.rows() + mask.cols() - rank);
    for (const auto &b : partition.blocks)
        out.required -= block_dimension(static_cast<Index>(b.rows.size()), static_cast<Index>(b.cols.size()), rank);
    return out;
}

bool partition_bound_holds(const Mask &mask, Index rank, const BipartitePartition &partition) {
    return partition_bound(mask, rank, partition).holds();
}

PartitionSearch search_violating_partition(const Mask &mask, Index rank, std::uint64_t budget,
                                           std::uint64_t seed) {
    check_rank(mask, rank);
    const Index V = mask.rows() + mask.cols();
    PartitionSearch out;
    if (V <= 20) {
        std::uint64_t cost = 1;
        for (Index k = 0; k < V; ++k)
            cost *= 3;
        if (cost / 2 <= budget) {
            out.exhaustive = true;
            out.violating = exhaustive_partition_search(mask, rank);
            return out;
        }
    }
    out.violating = sampled_partition_search(mask, rank, budget, seed);
    return out;
}

ConditionReport necessary_conditions_report(const Mask &mask, Index rank, std::uint64_t partition_budget) {
    check_rank(mask, rank);
    ConditionReport rep;
    rep.rows = mask.rows();
    rep.cols = mask.cols();
    rep.rank = rank;
    rep.alpha = mask.edge_count();
    rep.bound_i = rank * (mask.rows() + mask.cols() - rank);
    rep.cond_i = rep.alpha >= rep.bound_i;

    auto deg = min_degree_condition(mask, rank);
    rep.cond_ii = deg.ok;
    rep.violating_vertices = std::move(deg.violating);

    auto conn = is_r_connected(mask, rank);
    rep.cond_iii = conn.ok;
    rep.violating_cut = std::move(conn.cut);

    auto search = search_violating_partition(mask, rank, partition_budget);
    if (search.violating) {
        rep.cond_iv = PartitionStatus::violated;
        rep.violating_partition = std::move(search.violating);
    } else {
        rep.cond_iv = search.exhaustive ? PartitionStatus::pass : PartitionStatus::unknown;
    }
    return rep;
}

} // namespace rankclose
