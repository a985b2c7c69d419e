#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "repot/detail/scalar.hpp"

namespace repot::detail {

/// Dinic's blocking-flow algorithm over an arbitrary ordered field.
template <class Scalar>
class MaxFlow {
    using Traits = ScalarTraits<Scalar>;

  public:
    explicit MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

    /// Returns the edge id, usable with flow().
    std::size_t add_edge(std::size_t from, std::size_t to, Scalar capacity) {
        const std::size_t id = edges_.size();
        edges_.push_back({to, capacity, capacity});
        adj_[from].push_back(id);
        edges_.push_back({from, Scalar(0), Scalar(0)});
        adj_[to].push_back(id + 1);
        return id;
    }

    Scalar run(std::size_t source, std::size_t sink) {
        Scalar total = 0;
        while (bfs(source, sink)) {
            std::fill(next_.begin(), next_.end(), 0);
            for (;;) {
                Scalar pushed = dfs(source, sink, Scalar(-1));
                if (!(pushed > Traits::flow_tol())) break;
                total += pushed;
            }
        }
        return total;
    }

    [[nodiscard]] Scalar flow(std::size_t edge) const { return edges_[edge].cap - edges_[edge].residual; }

  private:
    struct Edge {
        std::size_t to;
        Scalar residual;
        Scalar cap;
    };

    bool bfs(std::size_t s, std::size_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            for (std::size_t id : adj_[v]) {
                const Edge& e = edges_[id];
                if (level_[e.to] < 0 && e.residual > Traits::flow_tol()) {
                    level_[e.to] = level_[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    // limit < 0 means unbounded.
    Scalar dfs(std::size_t v, std::size_t t, Scalar limit) {
        if (v == t) return limit;
        for (std::size_t& i = next_[v]; i < adj_[v].size(); ++i) {
            const std::size_t id = adj_[v][i];
            Edge& e = edges_[id];
            if (level_[e.to] != level_[v] + 1 || !(e.residual > Traits::flow_tol())) continue;
            const Scalar cap = (limit < Scalar(0) || e.residual < limit) ? e.residual : limit;
            const Scalar pushed = dfs(e.to, t, cap);
            if (pushed > Traits::flow_tol()) {
                e.residual -= pushed;
                edges_[id ^ 1].residual += pushed;
                return pushed;
            }
        }
        return Scalar(0);
    }

    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
};

} // namespace repot::detail
