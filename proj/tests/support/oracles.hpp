#pragma once

// Independent oracles for the test suites. Everything here recomputes
// expected values from first principles (quadrature, brute-force
// enumeration) and stays off the library's implementation paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "lsat/automata.hpp"
#include "lsat/model.hpp"

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double integrate_rec(const std::function<double(double)>& f, double a, double b,
                            double whole, double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return integrate_rec(f, a, c, left, tol / 2, depth - 1) +
           integrate_rec(f, c, b, right, tol / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11) {
    if (a == b) return 0.0;
    return integrate_rec(f, a, b, simpson(f, a, b), tol, 48);
}

// Travel time of a velocity profile limited by acceleration amax and speed
// vmax over distance d: t = integral of dx / v(x) with
// v(x) = min(sqrt(2 amax x), sqrt(2 amax (d-x)), vmax). The profile is
// symmetric, so integrate the first half and substitute x = u^2 to remove
// the sqrt singularity at x = 0.
inline double trapezoid_travel_time(double d, double vmax, double amax) {
    if (d <= 0.0) return 0.0;
    auto v = [&](double x) { return std::min(std::sqrt(2.0 * amax * x), vmax); };
    auto g = [&](double u) {
        const double x = u * u;
        return x == 0.0 ? 2.0 / std::sqrt(2.0 * amax) : 2.0 * u / v(x);
    };
    return 2.0 * integrate(g, 0.0, std::sqrt(d / 2.0));
}

// Mean of the PERT distribution: Beta on [a,b] with shape
// alpha = 1 + 4(m-a)/(b-a), beta = 1 + 4(b-m)/(b-a), computed as a ratio of
// numeric integrals of the unnormalized density.
inline double pert_mean_numeric(double a, double m, double b) {
    if (b - a < 1e-12) return a;
    const double alpha = 1.0 + 4.0 * (m - a) / (b - a);
    const double beta = 1.0 + 4.0 * (b - m) / (b - a);
    auto w = [&](double x) {
        return std::pow(x - a, alpha - 1.0) * std::pow(b - x, beta - 1.0);
    };
    const double mass = integrate(w, a, b);
    const double moment = integrate([&](double x) { return x * w(x); }, a, b);
    return moment / mass;
}

// All topological orders of an activity DAG, as node sequences.
inline void topo_rec(const lsat::Activity& act, std::set<lsat::NodeId>& remaining,
                     std::vector<lsat::NodeId>& prefix,
                     std::vector<std::vector<lsat::NodeId>>& out) {
    if (remaining.empty()) {
        out.push_back(prefix);
        return;
    }
    std::vector<lsat::NodeId> ready;
    for (const auto& n : remaining) {
        bool ok = true;
        for (const auto& [from, to] : act.edges)
            if (to == n && remaining.count(from)) {
                ok = false;
                break;
            }
        if (ok) ready.push_back(n);
    }
    for (const auto& n : ready) {
        remaining.erase(n);
        prefix.push_back(n);
        topo_rec(act, remaining, prefix, out);
        prefix.pop_back();
        remaining.insert(n);
    }
}

inline std::vector<std::vector<lsat::NodeId>> topological_orders(const lsat::Activity& act) {
    std::set<lsat::NodeId> remaining;
    for (const auto& [n, _] : act.nodes) remaining.insert(n);
    std::vector<lsat::NodeId> prefix;
    std::vector<std::vector<lsat::NodeId>> out;
    topo_rec(act, remaining, prefix, out);
    return out;
}

// All maximal traces of a finite acyclic automaton, as event-text sequences.
inline void complete_rec(const lsat::Automaton& a, const lsat::State& s,
                         std::vector<std::string>& prefix,
                         std::set<std::vector<std::string>>& out) {
    auto succ = a.successors(s);
    if (succ.empty()) {
        out.insert(prefix);
        return;
    }
    for (const auto& t : succ) {
        prefix.push_back(t.event.text());
        complete_rec(a, t.target, prefix, out);
        prefix.pop_back();
    }
}

inline std::set<std::vector<std::string>> complete_traces(const lsat::Automaton& a) {
    std::set<std::vector<std::string>> out;
    for (const auto& s : a.initial_states()) {
        std::vector<std::string> prefix;
        complete_rec(a, s, prefix, out);
    }
    return out;
}

// Every trace of length <= depth, by exhaustive unfolding. Exponential; only
// for small oracles.
inline void traces_rec(const lsat::Automaton& a, const lsat::State& s,
                       std::vector<std::string>& prefix, int left,
                       std::set<std::vector<std::string>>& out) {
    out.insert(prefix);
    if (left == 0) return;
    for (const auto& t : a.successors(s)) {
        prefix.push_back(t.event.text());
        traces_rec(a, t.target, prefix, left - 1, out);
        prefix.pop_back();
    }
}

inline std::set<std::vector<std::string>> bounded_traces(const lsat::Automaton& a, int depth) {
    std::set<std::vector<std::string>> out;
    for (const auto& s : a.initial_states()) {
        std::vector<std::string> prefix;
        traces_rec(a, s, prefix, depth, out);
    }
    return out;
}

}  // namespace oracle
