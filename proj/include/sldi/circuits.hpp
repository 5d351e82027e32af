#pragma once

// Johnson's enumeration of the elementary circuits of a directed graph.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sldi {

using Adjacency = std::vector<std::vector<std::size_t>>;

namespace detail {

// Tarjan SCC restricted to nodes >= lowest; returns the component id per node
// (or npos for excluded nodes).
inline std::vector<std::size_t> strong_components(const Adjacency& adj, std::size_t lowest) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, npos), low(n, 0), comp(n, npos);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    std::size_t components = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : adj[v]) {
            if (w < lowest) continue;
            if (index[w] == npos) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w = npos;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = components;
            } while (w != v);
            ++components;
        }
    };
    for (std::size_t v = lowest; v < n; ++v) {
        if (index[v] == npos) visit(v);
    }
    return comp;
}

}  // namespace detail

/// Calls `visit(nodes)` once per elementary circuit; `nodes` lists the circuit
/// v0 -> v1 -> ... -> v0 without repeating v0, starting at its least node.
/// Self-loops are reported as single-node circuits.
inline void for_each_elementary_circuit(const Adjacency& adj,
                                        const std::function<void(std::span<const std::size_t>)>& visit) {
    const std::size_t n = adj.size();
    std::vector<bool> blocked(n, false);
    std::vector<std::vector<std::size_t>> blockers(n);
    std::vector<std::size_t> path;
    std::vector<bool> in_component(n, false);

    std::function<void(std::size_t)> unblock = [&](std::size_t u) {
        blocked[u] = false;
        while (!blockers[u].empty()) {
            std::size_t w = blockers[u].back();
            blockers[u].pop_back();
            if (blocked[w]) unblock(w);
        }
    };

    for (std::size_t start = 0; start < n; ++start) {
        const auto comp = detail::strong_components(adj, start);
        for (std::size_t v = 0; v < n; ++v) {
            in_component[v] = v >= start && comp[v] == comp[start];
            blocked[v] = false;
            blockers[v].clear();
        }

        std::function<bool(std::size_t)> circuit = [&](std::size_t v) -> bool {
            bool found = false;
            path.push_back(v);
            blocked[v] = true;
            for (std::size_t w : adj[v]) {
                if (!in_component[w]) continue;
                if (w == start) {
                    visit(path);
                    found = true;
                } else if (!blocked[w] && circuit(w)) {
                    found = true;
                }
            }
            if (found) {
                unblock(v);
            } else {
                for (std::size_t w : adj[v]) {
                    if (!in_component[w]) continue;
                    auto& b = blockers[w];
                    if (std::find(b.begin(), b.end(), v) == b.end()) b.push_back(v);
                }
            }
            path.pop_back();
            return found;
        };
        circuit(start);
    }
}

}  // namespace sldi
