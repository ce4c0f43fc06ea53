#pragma once

#include <string>
#include <vector>

#include "oohlab/instance.hpp"
#include "oohlab/rng.hpp"

namespace oohlab {

// An offer put in front of a customer: option ids (kHomeOption = home,
// otherwise locker id), a price per option and the scaled home-to-option
// distance d0k (0 for home).
struct Offer {
  std::vector<int> options;
  std::vector<double> prices;
  std::vector<double> d0k;

  std::size_t size() const { return options.size(); }
  bool has_home() const;
  int home_index() const;  // -1 if absent
};

// Distance term fed to the utility: raw distance divided by the service-area
// diagonal, capped so the exp() cannot dominate.
double scaled_option_distance(double raw_distance, double area_diagonal);

// Deterministic utility of one option (noise is added at sampling time).
// OOH: -beta_k * exp(d0k) + beta_d * price; home: u0_home + beta_d * price.
double utility(const ChoiceSegment& seg, bool is_home, double price, double d0k);

// Softmax over deterministic utilities; sums to 1.
std::vector<double> choice_probabilities(const Offer& offer, const ChoiceSegment& seg);

// Gumbel-max draw; home_only segments take home deterministically whenever
// it is offered. Returns an index into offer.options.
int sample_choice(const Offer& offer, const ChoiceSegment& seg, Rng& rng);

// --- Tuning ------------------------------------------------------------------

struct TuneTargets {
  double no_pricing_home_share = 0.80;
  double static_pricing_home_share = 0.60;
  double static_discount = 5.0;
  double static_charge = 2.0;
  double tolerance = 0.05;  // share distance beyond which tuning reports failure
};

struct TuneCandidate {
  double u0_home = 0.0;
  double beta_k = 0.0;
  double beta_d = -0.25;
  double home_share_no_pricing = 0.0;
  double home_share_static = 0.0;
};

struct TuneResult {
  bool ok = false;
  ChoiceSegment segment;
  TuneCandidate best;
  std::vector<TuneCandidate> trace;  // evaluated refinement candidates, for the CSV
  std::string message;
};

// Two-stage coarse-to-fine grid search: (u0_home, beta_k) against the
// NoPricing home-share target, then beta_d against the StaticPricing target.
// Home shares are measured over `replications` simulated arrival streams.
TuneResult tune_parameters(const ProblemInstance& inst, const TuneTargets& targets,
                           int replications, Rng& rng);

std::string tune_trace_csv(const TuneResult& result);

}  // namespace oohlab
