#pragma once

#include <vector>

namespace tvgcg {

struct CutResult {
    double flow = 0.0;
    std::vector<int> sink_side;  // interior nodes grouped with the sink, sorted
};

// Capacitated s-t graph on N interior nodes plus implicit source/sink.
// Interior connections are undirected (stored as two antiparallel arcs of
// equal capacity). One solve per instance at a time; solve() rewinds the
// residual state so repeated calls are permitted.
class FlowNetwork {
  public:
    explicit FlowNetwork(int n_nodes);

    void add_edge(int a, int b, double capacity);       // undirected, interior
    void add_source_arc(int node, double capacity);     // s -> node
    void add_sink_arc(int node, double capacity);       // node -> t

    int n_nodes() const { return n_; }

    // Exact max flow (Dinic). sink_side = interior nodes not reachable from
    // the source in the final residual graph.
    CutResult max_flow();

    // Independent recomputation of the cut value of a given partition from
    // the original capacities.
    double cut_value(const std::vector<int>& sink_side) const;

  private:
    struct Arc {
        int to;
        int rev;          // index of the reverse arc in adj_[to]
        double cap;       // residual capacity
        double orig_cap;  // capacity as constructed
    };

    int n_;
    int source_, sink_;
    std::vector<std::vector<Arc>> adj_;
    std::vector<int> level_, iter_;

    void add_arc(int from, int to, double cap_fwd, double cap_bwd);
    bool bfs(double eps);
    double dfs(int v, double limit, double eps);
};

double verify_cut(const FlowNetwork& net, const CutResult& cut);

}  // namespace tvgcg
