#include "oohlab/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace oohlab {

using nlohmann::json;

BoundingBox ProblemInstance::area() const {
  BoundingBox b;
  b.expand(depot);
  for (const auto& p : customer_pool) b.expand(p);
  for (const auto& o : ooh) b.expand(o.loc);
  return b;
}

void ProblemInstance::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!std::isfinite(depot.x) || !std::isfinite(depot.y)) fail("depot: non-finite coordinates");
  if (customer_pool.empty()) fail("customers: empty pool");
  for (std::size_t i = 0; i < customer_pool.size(); ++i) {
    if (!std::isfinite(customer_pool[i].x) || !std::isfinite(customer_pool[i].y))
      fail("customers[" + std::to_string(i) + "]: non-finite coordinates");
  }
  for (const auto& o : ooh) {
    if (o.capacity && *o.capacity < 1)
      fail("ooh[" + std::to_string(o.id) + "].capacity: must be >= 1");
  }
  if (fleet_size < 1) fail("fleet_size: must be >= 1");
  if (vehicle_capacity < 1) fail("vehicle_capacity: must be >= 1");
  if (speed <= 0.0) fail("speed: must be > 0");
  if (service_min_minutes > service_max_minutes) fail("service_time_bounds: lo > hi");
  if (rates.salary_per_hour < 0 || rates.fuel_per_distance < 0 || rates.failure_cost < 0)
    fail("rates: negative rate");
  if (rates.failure_prob < 0.0 || rates.failure_prob > 1.0) fail("rates.failure_prob: outside [0,1]");
  if (rates.price_min >= rates.price_max) fail("rates.price_bounds: a >= b");
  if (arrivals.nb_r < 1) fail("arrivals.nb_r: must be >= 1");
  if (arrivals.nb_p <= 0.0 || arrivals.nb_p > 1.0) fail("arrivals.nb_p: outside (0,1]");
  if (segments.empty()) fail("segments: empty");
  double mu_sum = 0.0;
  for (std::size_t g = 0; g < segments.size(); ++g) {
    const auto& s = segments[g];
    mu_sum += s.mu;
    if (!s.home_only) {
      if (s.beta_k < 0.0) fail("segments[" + std::to_string(g) + "].beta_k: must be >= 0");
      if (s.beta_d >= 0.0) fail("segments[" + std::to_string(g) + "].beta_d: must be < 0");
    }
  }
  if (std::abs(mu_sum - 1.0) > 1e-9) fail("segments: arrival shares must sum to 1");
  if (offer_size < 0) fail("offer_size: must be >= 0");
}

// --- GH parsing --------------------------------------------------------------

namespace {

bool parse_number(const std::string& tok, double& out) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc{} && res.ptr == e;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

std::vector<Location> parse_gh_pool(const std::string& text) {
  std::vector<Location> pool;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool in_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    double id, x, y;
    const bool row = toks.size() >= 3 && parse_number(toks[0], id) &&
                     parse_number(toks[1], x) && parse_number(toks[2], y);
    if (row) {
      in_data = true;
      pool.push_back({x, y});
    } else if (in_data && parse_number(toks[0], id)) {
      throw std::runtime_error("gh parse error at line " + std::to_string(line_no) +
                               ": expected 'id x y ...' columns");
    }
    // non-numeric lines are header material and skipped
  }
  if (pool.empty()) throw std::runtime_error("gh parse error: no customer records found");
  return pool;
}

std::string format_gh_pool(const std::vector<Location>& pool, const std::string& name) {
  std::ostringstream out;
  out << name << "\n\nVEHICLE\nNUMBER     CAPACITY\n  50          200\n\n"
      << "CUSTOMER\n"
      << "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n\n";
  char buf[160];
  for (std::size_t i = 0; i < pool.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%5zu %10.2f %10.2f %8d %10d %10d %10d\n", i,
                  pool[i].x, pool[i].y, i == 0 ? 0 : 1, 0, 1000, 10);
    out << buf;
  }
  return out.str();
}

// --- OOH selection ------------------------------------------------------------

PickedOoh pick_ooh(const std::vector<Location>& pool, int count, Rng& rng,
                   const CapacitySpec& spec) {
  if (count < 0 || static_cast<std::size_t>(count) > pool.size())
    throw std::invalid_argument("pick_ooh: count exceeds pool size");
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  // partial Fisher-Yates: draw `count` positions without replacement
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  for (int k = 0; k < count; ++k) {
    std::size_t j = k + static_cast<std::size_t>(rng.uniform_int(idx.size() - k));
    std::swap(idx[k], idx[j]);
    chosen.push_back(idx[k]);
  }
  std::vector<bool> taken(pool.size(), false);
  PickedOoh out;
  out.ooh.reserve(count);
  for (int k = 0; k < count; ++k) {
    taken[chosen[k]] = true;
    OOHLocation o;
    o.id = k;
    o.loc = pool[chosen[k]];
    out.ooh.push_back(o);
  }
  switch (spec.kind) {
    case CapacitySpec::kInfinite:
      break;
    case CapacitySpec::kUniform:
      for (auto& o : out.ooh) o.capacity = spec.capacity;
      break;
    case CapacitySpec::kFraction: {
      const int n_cap = static_cast<int>(std::lround(spec.fraction * count));
      std::vector<int> ids(count);
      for (int i = 0; i < count; ++i) ids[i] = i;
      rng.shuffle(ids);
      for (int i = 0; i < n_cap; ++i) out.ooh[ids[i]].capacity = spec.capacity;
      break;
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (!taken[i]) out.remaining.push_back(pool[i]);
  return out;
}

// --- Service times --------------------------------------------------------------

double service_time(const Location& loc, const BoundingBox& area, double lo_minutes,
                    double hi_minutes) {
  if (area.degenerate())
    throw std::invalid_argument("service_time: degenerate service area");
  const double x = -3.0 + 6.0 * (loc.x - area.min.x) / area.width();
  const double y = -2.0 + 4.0 * (loc.y - area.min.y) / area.height();
  const double raw =
      (4.0 - 2.1 * x * x + y / 3.0) * x * x + x * y + (-4.0 + 4.0 * x * x) * y * y;
  return std::clamp(raw, lo_minutes, hi_minutes);
}

int sample_arrival_count(const ArrivalProcess& ap, Rng& rng) {
  return rng.negative_binomial(ap.nb_r, ap.nb_p);
}

std::vector<int> nearest_open_ooh(const ProblemInstance& inst, const Location& customer,
                                  const std::vector<int>& remaining, int n) {
  std::vector<std::pair<double, int>> by_dist;
  for (std::size_t i = 0; i < inst.ooh.size(); ++i) {
    if (!remaining.empty() && remaining[i] == 0) continue;
    by_dist.emplace_back(distance(customer, inst.ooh[i].loc), static_cast<int>(i));
  }
  std::sort(by_dist.begin(), by_dist.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return inst.ooh[a.second].id < inst.ooh[b.second].id;
  });
  if (static_cast<int>(by_dist.size()) > n) by_dist.resize(n);
  std::vector<int> out;
  out.reserve(by_dist.size());
  for (const auto& [d, i] : by_dist) out.push_back(i);
  return out;
}

// --- JSON serialization -----------------------------------------------------------

namespace {

json location_to_json(const Location& l) { return json{{"x", l.x}, {"y", l.y}}; }

Location location_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw std::runtime_error("instance schema: " + path + " must be {x,y}");
  return {j.at("x").get<double>(), j.at("y").get<double>()};
}

template <class T>
T require(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key))
    throw std::runtime_error("instance schema: missing field " + path + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::runtime_error("instance schema: bad type for " + path + key);
  }
}

}  // namespace

std::string instance_to_json_text(const ProblemInstance& inst) {
  json j;
  j["depot"] = location_to_json(inst.depot);
  j["customers"] = json::array();
  for (const auto& c : inst.customer_pool) j["customers"].push_back(location_to_json(c));
  j["ooh"] = json::array();
  for (const auto& o : inst.ooh) {
    json jo{{"id", o.id}, {"x", o.loc.x}, {"y", o.loc.y}};
    if (o.capacity) jo["capacity"] = *o.capacity;
    j["ooh"].push_back(jo);
  }
  j["fleet"] = {{"size", inst.fleet_size}, {"capacity", inst.vehicle_capacity}};
  j["rates"] = {{"salary_per_hour", inst.rates.salary_per_hour},
                {"fuel_per_distance", inst.rates.fuel_per_distance},
                {"failure_cost", inst.rates.failure_cost},
                {"failure_prob", inst.rates.failure_prob},
                {"revenue_per_customer", inst.rates.revenue_per_customer},
                {"price_bounds", {inst.rates.price_min, inst.rates.price_max}}};
  j["arrivals"] = {{"nb_r", inst.arrivals.nb_r},
                   {"nb_p", inst.arrivals.nb_p},
                   {"horizon_T", inst.arrivals.horizon_T}};
  j["speed"] = inst.speed;
  j["service_time_bounds"] = {inst.service_min_minutes, inst.service_max_minutes};
  j["segments"] = json::array();
  for (const auto& s : inst.segments) {
    j["segments"].push_back({{"mu", s.mu},
                             {"beta_k", s.beta_k},
                             {"beta_d", s.beta_d},
                             {"u0_home", s.u0_home},
                             {"home_only", s.home_only}});
  }
  j["offer_size"] = inst.offer_size;
  return j.dump(2) + "\n";
}

ProblemInstance instance_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("instance schema: invalid json: ") + e.what());
  }
  ProblemInstance inst;
  inst.depot = location_from_json(require<json>(j, "depot", ""), "depot");
  for (const auto& c : require<json>(j, "customers", ""))
    inst.customer_pool.push_back(location_from_json(c, "customers[]"));
  if (j.contains("ooh")) {
    for (const auto& o : j.at("ooh")) {
      OOHLocation loc;
      loc.id = require<int>(o, "id", "ooh[].");
      loc.loc = {require<double>(o, "x", "ooh[]."), require<double>(o, "y", "ooh[].")};
      if (o.contains("capacity")) loc.capacity = o.at("capacity").get<int>();
      inst.ooh.push_back(loc);
    }
  }
  const json fleet = require<json>(j, "fleet", "");
  inst.fleet_size = require<int>(fleet, "size", "fleet.");
  inst.vehicle_capacity = require<int>(fleet, "capacity", "fleet.");
  const json rates = require<json>(j, "rates", "");
  inst.rates.salary_per_hour = require<double>(rates, "salary_per_hour", "rates.");
  inst.rates.fuel_per_distance = require<double>(rates, "fuel_per_distance", "rates.");
  inst.rates.failure_cost = require<double>(rates, "failure_cost", "rates.");
  inst.rates.failure_prob = require<double>(rates, "failure_prob", "rates.");
  inst.rates.revenue_per_customer = require<double>(rates, "revenue_per_customer", "rates.");
  const auto bounds = require<std::vector<double>>(rates, "price_bounds", "rates.");
  if (bounds.size() != 2) throw std::runtime_error("instance schema: rates.price_bounds must be [a,b]");
  inst.rates.price_min = bounds[0];
  inst.rates.price_max = bounds[1];
  const json arr = require<json>(j, "arrivals", "");
  inst.arrivals.nb_r = require<int>(arr, "nb_r", "arrivals.");
  inst.arrivals.nb_p = require<double>(arr, "nb_p", "arrivals.");
  inst.arrivals.horizon_T = require<int>(arr, "horizon_T", "arrivals.");
  inst.speed = require<double>(j, "speed", "");
  const auto sb = require<std::vector<double>>(j, "service_time_bounds", "");
  if (sb.size() != 2) throw std::runtime_error("instance schema: service_time_bounds must be [lo,hi]");
  inst.service_min_minutes = sb[0];
  inst.service_max_minutes = sb[1];
  for (const auto& s : require<json>(j, "segments", "")) {
    ChoiceSegment seg;
    seg.mu = require<double>(s, "mu", "segments[].");
    seg.home_only = s.value("home_only", false);
    if (!seg.home_only) {
      seg.beta_k = require<double>(s, "beta_k", "segments[].");
      seg.beta_d = require<double>(s, "beta_d", "segments[].");
      seg.u0_home = require<double>(s, "u0_home", "segments[].");
    }
    inst.segments.push_back(seg);
  }
  inst.offer_size = require<int>(j, "offer_size", "");
  inst.validate();
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json_text(ss.str());
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json_text(inst);
}

// --- Generators ---------------------------------------------------------------------

std::vector<Location> generate_rc_pool(int n, double area_size, Rng& rng) {
  std::vector<Location> pool;
  pool.reserve(n + 1);
  pool.push_back({area_size / 2.0, area_size / 2.0});  // depot
  const int n_clustered = n / 2;
  const int n_clusters = 8;
  std::vector<Location> centers;
  for (int c = 0; c < n_clusters; ++c)
    centers.push_back({rng.uniform(0.1, 0.9) * area_size, rng.uniform(0.1, 0.9) * area_size});
  for (int i = 0; i < n_clustered; ++i) {
    const auto& c = centers[static_cast<std::size_t>(rng.uniform_int(n_clusters))];
    // box-muller pair for a gaussian spread around the center
    const double u1 = rng.next_double_pos();
    const double u2 = rng.next_double();
    const double rad = std::sqrt(-2.0 * std::log(u1)) * area_size * 0.04;
    Location p{c.x + rad * std::cos(2.0 * M_PI * u2), c.y + rad * std::sin(2.0 * M_PI * u2)};
    p.x = std::clamp(p.x, 0.0, area_size);
    p.y = std::clamp(p.y, 0.0, area_size);
    pool.push_back(p);
  }
  for (int i = n_clustered; i < n; ++i)
    pool.push_back({rng.uniform(0.0, area_size), rng.uniform(0.0, area_size)});
  return pool;
}

ProblemInstance generate_synthetic_instance(const SyntheticOptions& opt, Rng& rng) {
  ProblemInstance inst;
  auto pool = generate_rc_pool(opt.n_customers, opt.area_size, rng);
  inst.depot = pool.front();
  std::vector<Location> customers(pool.begin() + 1, pool.end());
  auto picked = pick_ooh(customers, opt.n_ooh, rng, opt.capacity);
  inst.ooh = std::move(picked.ooh);
  inst.customer_pool = std::move(picked.remaining);
  // Benchmark-style segment; see docs/instance_schema.json for how to
  // override with tuned values.
  inst.segments = {ChoiceSegment{1.0, 0.02, -0.25, 3.2, false}};
  inst.validate();
  return inst;
}

ProblemInstance generate_large_instance(const LargeCaseOptions& opt, Rng& rng) {
  ProblemInstance inst;
  inst.depot = {opt.area_size / 2.0, opt.area_size / 2.0};
  std::vector<Location> centers;
  for (int c = 0; c < opt.n_clusters; ++c)
    centers.push_back({rng.uniform(0.05, 0.95) * opt.area_size,
                       rng.uniform(0.05, 0.95) * opt.area_size});
  auto draw_clustered = [&]() {
    const auto& c = centers[static_cast<std::size_t>(rng.uniform_int(centers.size()))];
    const double u1 = rng.next_double_pos();
    const double u2 = rng.next_double();
    const double rad = std::sqrt(-2.0 * std::log(u1)) * opt.area_size * 0.03;
    Location p{c.x + rad * std::cos(2.0 * M_PI * u2), c.y + rad * std::sin(2.0 * M_PI * u2)};
    p.x = std::clamp(p.x, 0.0, opt.area_size);
    p.y = std::clamp(p.y, 0.0, opt.area_size);
    return p;
  };
  for (int i = 0; i < opt.n_customers; ++i) inst.customer_pool.push_back(draw_clustered());
  std::vector<Location> ooh_pool;
  for (int i = 0; i < opt.n_ooh; ++i) ooh_pool.push_back(draw_clustered());
  CapacitySpec cap;
  cap.kind = CapacitySpec::kFraction;
  cap.fraction = opt.capacitated_share;
  cap.capacity = opt.ooh_capacity;
  auto picked = pick_ooh(ooh_pool, opt.n_ooh, rng, cap);
  inst.ooh = std::move(picked.ooh);
  inst.fleet_size = opt.fleet_size;
  inst.vehicle_capacity = opt.vehicle_capacity;
  inst.arrivals.nb_r = opt.nb_r;
  inst.arrivals.nb_p = 0.5;
  inst.arrivals.horizon_T = opt.nb_r;
  inst.segments = {ChoiceSegment{1.0, 0.018, -0.18, 3.55, false}};
  inst.validate();
  return inst;
}

}  // namespace oohlab
