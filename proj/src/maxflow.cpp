#include "tvgcg/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "tvgcg/error.hpp"

namespace tvgcg {

FlowNetwork::FlowNetwork(int n_nodes) : n_(n_nodes), source_(n_nodes), sink_(n_nodes + 1) {
    if (n_nodes < 0) throw Error("FlowNetwork: negative node count");
    adj_.resize(n_ + 2);
}

void FlowNetwork::add_arc(int from, int to, double cap_fwd, double cap_bwd) {
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), cap_fwd, cap_fwd});
    adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, cap_bwd, cap_bwd});
}

void FlowNetwork::add_edge(int a, int b, double capacity) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_ || a == b)
        throw Error("FlowNetwork: bad interior edge");
    if (!(capacity >= 0.0)) throw Error("FlowNetwork: negative capacity");
    add_arc(a, b, capacity, capacity);
}

void FlowNetwork::add_source_arc(int node, double capacity) {
    if (node < 0 || node >= n_) throw Error("FlowNetwork: bad node");
    if (!(capacity >= 0.0)) throw Error("FlowNetwork: negative capacity");
    add_arc(source_, node, capacity, 0.0);
}

void FlowNetwork::add_sink_arc(int node, double capacity) {
    if (node < 0 || node >= n_) throw Error("FlowNetwork: bad node");
    if (!(capacity >= 0.0)) throw Error("FlowNetwork: negative capacity");
    add_arc(node, sink_, capacity, 0.0);
}

bool FlowNetwork::bfs(double eps) {
    level_.assign(n_ + 2, -1);
    std::queue<int> q;
    level_[source_] = 0;
    q.push(source_);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const Arc& a : adj_[v]) {
            if (a.cap > eps && level_[a.to] < 0) {
                level_[a.to] = level_[v] + 1;
                q.push(a.to);
            }
        }
    }
    return level_[sink_] >= 0;
}

double FlowNetwork::dfs(int v, double limit, double eps) {
    if (v == sink_) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
        Arc& a = adj_[v][i];
        if (a.cap > eps && level_[v] < level_[a.to]) {
            double pushed = dfs(a.to, std::min(limit, a.cap), eps);
            if (pushed > 0.0) {
                a.cap -= pushed;
                adj_[a.to][a.rev].cap += pushed;
                return pushed;
            }
        }
    }
    return 0.0;
}

CutResult FlowNetwork::max_flow() {
    // Rewind residual capacities so a solve starts from the original graph.
    double max_cap = 0.0;
    for (auto& arcs : adj_) {
        for (Arc& a : arcs) {
            a.cap = a.orig_cap;
            max_cap = std::max(max_cap, a.orig_cap);
        }
    }
    // Augmenting paths with bottleneck below eps are noise at double
    // precision and would stall termination.
    const double eps = 1e-15 * max_cap;

    CutResult res;
    while (bfs(eps)) {
        iter_.assign(n_ + 2, 0);
        while (true) {
            double pushed = dfs(source_, std::numeric_limits<double>::infinity(), eps);
            if (pushed <= 0.0) break;
            res.flow += pushed;
        }
    }
    // level_ < 0 now marks nodes unreachable from the source in the residual.
    for (int v = 0; v < n_; ++v)
        if (level_[v] < 0) res.sink_side.push_back(v);
    return res;
}

double FlowNetwork::cut_value(const std::vector<int>& sink_side) const {
    std::vector<char> in_sink(n_ + 2, 0);
    for (int v : sink_side) {
        if (v < 0 || v >= n_) throw Error("cut_value: bad node in partition");
        in_sink[v] = 1;
    }
    in_sink[sink_] = 1;
    double value = 0.0;
    for (int v = 0; v < n_ + 2; ++v) {
        if (in_sink[v]) continue;
        for (const Arc& a : adj_[v])
            if (in_sink[a.to]) value += a.orig_cap;
    }
    return value;
}

double verify_cut(const FlowNetwork& net, const CutResult& cut) {
    return net.cut_value(cut.sink_side);
}

}  // namespace tvgcg
