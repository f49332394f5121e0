#include "polycube/maxflow.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace polycube {

namespace {

// Dinic's algorithm on a residual graph with paired arcs (a, a^1)
class Dinic {
public:
    Dinic(index_t n, double epsilon) : epsilon_(epsilon), first_(n), level_(n), cursor_(n) {}

    void add(index_t u, index_t v, double capacity) {
        first_[u].push_back(static_cast<index_t>(to_.size()));
        to_.push_back(v);
        residual_.push_back(capacity);
        first_[v].push_back(static_cast<index_t>(to_.size()));
        to_.push_back(u);
        residual_.push_back(0.0);
    }

    double run(index_t s, index_t t) {
        double flow = 0.0;
        while (build_levels(s, t)) {
            std::fill(cursor_.begin(), cursor_.end(), 0);
            while (true) {
                double pushed = push(s, t, std::numeric_limits<double>::infinity());
                if (pushed <= epsilon_)
                    break;
                flow += pushed;
            }
        }
        return flow;
    }

    std::vector<bool> reachable(index_t s) const {
        std::vector<bool> seen(first_.size(), false);
        std::vector<index_t> stack = {s};
        seen[s] = true;
        while (!stack.empty()) {
            index_t u = stack.back();
            stack.pop_back();
            for (index_t a : first_[u])
                if (residual_[a] > epsilon_ && !seen[to_[a]]) {
                    seen[to_[a]] = true;
                    stack.push_back(to_[a]);
                }
        }
        return seen;
    }

private:
    bool build_levels(index_t s, index_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<index_t> queue;
        level_[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            index_t u = queue.front();
            queue.pop();
            for (index_t a : first_[u])
                if (residual_[a] > epsilon_ && level_[to_[a]] < 0) {
                    level_[to_[a]] = level_[u] + 1;
                    queue.push(to_[a]);
                }
        }
        return level_[t] >= 0;
    }

    double push(index_t u, index_t t, double limit) {
        if (u == t)
            return limit;
        for (std::size_t& i = cursor_[u]; i < first_[u].size(); ++i) {
            index_t a = first_[u][i];
            index_t v = to_[a];
            if (residual_[a] <= epsilon_ || level_[v] != level_[u] + 1)
                continue;
            double pushed = push(v, t, std::min(limit, residual_[a]));
            if (pushed > epsilon_) {
                residual_[a] -= pushed;
                residual_[a ^ 1] += pushed;
                return pushed;
            }
        }
        return 0.0;
    }

    double epsilon_;
    std::vector<std::vector<index_t>> first_;
    std::vector<index_t> to_;
    std::vector<double> residual_;
    std::vector<int> level_;
    std::vector<std::size_t> cursor_;
};

} // namespace

CutResult min_cut(const CutProblem& problem) {
    if (problem.source >= problem.nb_nodes || problem.sink >= problem.nb_nodes || problem.source == problem.sink)
        throw std::invalid_argument("min_cut needs distinct source and sink nodes");
    double finite_sum = 0.0;
    for (const auto& arc : problem.arcs) {
        if (!(arc.capacity >= 0.0))
            throw std::invalid_argument("min_cut capacities must be non-negative");
        if (arc.from >= problem.nb_nodes || arc.to >= problem.nb_nodes)
            throw std::invalid_argument("min_cut arc references a missing node");
        if (std::isfinite(arc.capacity))
            finite_sum += arc.capacity;
    }
    // infinite arcs become larger than any finite cut
    const double infinite = 2.0 * finite_sum + 1.0;
    Dinic dinic(problem.nb_nodes, 1e-12 * (finite_sum + 1.0));
    for (const auto& arc : problem.arcs)
        if (arc.capacity > 0.0 && arc.from != arc.to)
            dinic.add(arc.from, arc.to, std::isfinite(arc.capacity) ? arc.capacity : infinite);
    CutResult result;
    result.value = dinic.run(problem.source, problem.sink);
    result.source_side = dinic.reachable(problem.source);
    if (result.value > finite_sum * (1.0 + 1e-9) + 1e-9)
        result.value = std::numeric_limits<double>::infinity();
    return result;
}

} // namespace polycube
