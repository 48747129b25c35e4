#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semirec/markov_chain.hpp"

namespace semirec {

enum class Subject { map, chain, semigroup };
enum class Status { certified, none_within_horizon, not_computed };

std::string to_string(Subject s);
std::string to_string(Status s);

/// Finite-window proxy for a liminf: the value, the threshold it is compared with, and the window.
struct WindowEstimate {
    bool computed = false;
    Rational value;
    Rational threshold;
    bool meets = false;
    std::size_t window_lo = 0;
    std::size_t window_hi = 0;
    /// For weak-uniform estimates: the sampled point attaining the value.
    std::optional<Rational> witness;
    /// What `value` measures.
    std::string quantity;
};

struct RecurrenceVerdict {
    Subject subject = Subject::map;
    Rational x;
    Rational eps;
    std::size_t horizon = 0;

    Status recurrent = Status::none_within_horizon;
    std::optional<std::size_t> recurrent_time;
    Word recurrent_word;

    Status weak = Status::none_within_horizon;
    std::optional<std::size_t> weak_time;

    WindowEstimate uniform;
    WindowEstimate weak_uniform;

    std::vector<std::size_t> return_times;
    std::optional<MonteCarloInfo> mc;
    /// Parts of the verdict that were skipped, with the reason.
    std::vector<std::string> notes;

    bool is_recurrent() const { return recurrent == Status::certified; }
    bool is_weak() const { return weak == Status::certified; }
    bool is_uniform() const { return uniform.computed && uniform.meets; }
};

struct ClassifyOptions {
    /// Minimum number of returns inside the window for a map to count as uniform.
    std::size_t r_min = 2;
    /// Threshold on window-min of Q^n(x, ball) for chains and semigroups.
    Rational chain_threshold = Rational(1, 1000);
    bool compute_weak = true;
    /// Number of sample points for the weak-uniform estimate; 0 skips it.
    std::size_t weak_grid = 128;
    /// Interval budget for reachable-set iteration.
    std::size_t reach_budget = 100'000;
    DpOptions dp;
    /// Monte Carlo mode (chains and semigroups): seed and trial count.
    std::optional<MonteCarloInfo> mc;
};

/// Window [ceil(N/2), N] used by every uniform estimate.
std::pair<std::size_t, std::size_t> uniform_window(std::size_t horizon);

/// Sample points y = x + eps (2k - g + 1)/g, k = 0..g-1, kept when inside [0,1].
std::vector<Rational> weak_grid_points(const Rational& x, const Rational& eps, std::size_t g);

/// First n in 1..horizon with T^n(U) meeting U when U is iterated as a set, where
/// maps is applied as the union of all generator images.
std::optional<std::size_t> first_set_return(std::span<const PiecewiseMap> maps, const IntervalSet& u,
                                             std::size_t horizon, std::size_t budget);

RecurrenceVerdict classify_map_point(const PiecewiseMap& t, const Rational& x, const Rational& eps,
                                     std::size_t horizon, const ClassifyOptions& opts = {});
RecurrenceVerdict classify_chain_point(const MarkovChain& q, const Rational& x, const Rational& eps,
                                       std::size_t horizon, const ClassifyOptions& opts = {});
RecurrenceVerdict classify_semigroup_point(const GeneratorSet& g, const std::vector<Rational>& p, const Rational& x,
                                           const Rational& eps, std::size_t horizon,
                                           const ClassifyOptions& opts = {});

struct RBracket {
    Rational lower;
    Rational upper;
};

/// Bracket on sup{r : B_r(x) misses T^n B_r(x) for 1 <= n <= N} with closed balls.
RBracket r_function(const PiecewiseMap& t, const Rational& x, std::size_t horizon, const Rational& r_tol);

nlohmann::json verdict_to_json(const RecurrenceVerdict& v);

} // namespace semirec
