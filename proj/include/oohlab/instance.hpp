#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oohlab/geom.hpp"
#include "oohlab/rng.hpp"

namespace oohlab {

constexpr int kHomeOption = -1;  // sentinel id for home delivery

struct OOHLocation {
  int id = 0;
  Location loc;
  std::optional<int> capacity;  // parcels; empty = infinite

  bool capacitated() const { return capacity.has_value(); }
};

struct CostRates {
  double salary_per_hour = 30.0;     // C^w
  double fuel_per_distance = 0.3;    // C^f
  double failure_cost = 10.0;        // C^m
  double failure_prob = 0.1;         // P^m
  double revenue_per_customer = 50.0;  // r
  double price_min = -10.0;          // a (max discount)
  double price_max = 2.0;            // b (max charge)
};

struct ArrivalProcess {
  int nb_r = 90;
  double nb_p = 0.5;
  int horizon_T = 90;

  double mean() const { return nb_r * (1.0 - nb_p) / nb_p; }
};

struct ChoiceSegment {
  double mu = 1.0;        // arrival share
  double beta_k = 0.0;    // distance sensitivity (>= 0)
  double beta_d = -0.25;  // price sensitivity (< 0)
  double u0_home = 0.0;   // home-delivery utility
  bool home_only = false;
};

struct ProblemInstance {
  Location depot;
  std::vector<Location> customer_pool;
  std::vector<OOHLocation> ooh;
  int fleet_size = 9;        // V
  int vehicle_capacity = 10; // K
  CostRates rates;
  ArrivalProcess arrivals;
  double speed = 30.0;                  // distance units per hour
  double service_min_minutes = 1.0;
  double service_max_minutes = 10.0;
  std::vector<ChoiceSegment> segments;
  int offer_size = 20;  // N

  int fleet_parcel_capacity() const { return fleet_size * vehicle_capacity; }

  // Service area covering depot, customers and OOH locations.
  BoundingBox area() const;

  // Consistency checks; throws std::invalid_argument naming the field.
  void validate() const;
};

// --- Gehring-Homberger parsing -------------------------------------------

// Parses the plain-text benchmark layout (id, x, y, demand, time-window
// columns; only id/x/y are consumed). Returns coordinates in file order, the
// depot being the first record. Throws std::runtime_error naming the line on
// malformed input.
std::vector<Location> parse_gh_pool(const std::string& text);

// Renders a pool in the same layout (used by the instance generator so the
// parser can be exercised round-trip).
std::string format_gh_pool(const std::vector<Location>& pool, const std::string& name);

// --- OOH selection ---------------------------------------------------------

struct CapacitySpec {
  enum Kind { kInfinite, kUniform, kFraction } kind = kInfinite;
  int capacity = 0;        // for kUniform / kFraction
  double fraction = 0.0;   // share of capacitated lockers, for kFraction
};

struct PickedOoh {
  std::vector<OOHLocation> ooh;
  std::vector<Location> remaining;
};

// Samples `count` OOH locations from the pool without replacement (ids
// 0..count-1) and assigns capacities per the spec rule.
PickedOoh pick_ooh(const std::vector<Location>& pool, int count, Rng& rng,
                   const CapacitySpec& spec);

// --- Service times ----------------------------------------------------------

// Spatially varying service duration: the service area is projected onto
// x in [-3,3], y in [-2,2], evaluated with the six-hump camelback function and
// clipped to [lo,hi] minutes.
double service_time(const Location& loc, const BoundingBox& area,
                    double lo_minutes = 1.0, double hi_minutes = 10.0);

// --- Arrivals ---------------------------------------------------------------

int sample_arrival_count(const ArrivalProcess& ap, Rng& rng);

// --- Offer geometry -----------------------------------------------------------

// Indices (positions in inst.ooh) of the up-to-n lockers closest to the
// customer that still have remaining capacity, sorted by (distance, id).
// `remaining` holds per-locker remaining capacity aligned with inst.ooh;
// -1 means infinite.
std::vector<int> nearest_open_ooh(const ProblemInstance& inst, const Location& customer,
                                  const std::vector<int>& remaining, int n);

// --- Serialization ----------------------------------------------------------

ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& inst, const std::string& path);

ProblemInstance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const ProblemInstance& inst);

// --- Generators --------------------------------------------------------------

struct SyntheticOptions {
  int n_customers = 200;
  int n_ooh = 10;
  CapacitySpec capacity;
  double area_size = 140.0;  // square side, depot at the center
};

// Random-clustered pool in the style of the 200-customer benchmark instances:
// half the locations cluster around seeded centers, half are uniform.
std::vector<Location> generate_rc_pool(int n, double area_size, Rng& rng);

// Complete synthetic instance (benchmark-style defaults for all rates).
ProblemInstance generate_synthetic_instance(const SyntheticOptions& opt, Rng& rng);

struct LargeCaseOptions {
  int n_customers = 4000;
  int n_ooh = 299;
  double capacitated_share = 0.38;
  int ooh_capacity = 42;
  int nb_r = 700;
  int fleet_size = 25;
  int vehicle_capacity = 100;
  double area_size = 400.0;
  int n_clusters = 40;
};

// City-scale synthetic instance (clustered customer pool, partially
// capacitated lockers, large fleet).
ProblemInstance generate_large_instance(const LargeCaseOptions& opt, Rng& rng);

}  // namespace oohlab
