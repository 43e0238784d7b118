// Copyright 2026 The fpmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fpmod/harness.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace fpmod {

std::vector<RingDesc> HarnessConfig::default_rings() {
  return {RingDesc::integers(),   RingDesc::integers_mod(6), RingDesc::integers_mod(12),
          RingDesc::rationals(),  RingDesc::prime_field(5),  RingDesc::gaussian()};
}

void HarnessConfig::validate() const {
  if (max_gens > 4) fail(ErrorCode::InvalidInput, "max_gens must be at most 4", "/max_gens");
  if (max_entry < 1 || max_entry > 10) fail(ErrorCode::InvalidInput, "max_entry must lie in 1..10", "/max_entry");
  if (parallelism == 0) fail(ErrorCode::InvalidInput, "parallelism must be positive", "/parallelism");
  if (rings.empty()) fail(ErrorCode::InvalidInput, "at least one ring is required", "/rings");
  for (const auto& s : suites) find_suite(s);
}

void require(bool cond, const std::string& what) {
  if (!cond) throw PropertyFailure(what);
}

const Suite& find_suite(const std::string& name) {
  for (const auto& s : registered_suites())
    if (s.name == name) return s;
  fail(ErrorCode::InvalidInput, "unknown suite \"" + name + "\"", "/params/suite");
}

Outcome evaluate(const Suite& s, const InputDoc& doc) {
  Outcome o;
  try {
    s.check(doc, o.counters);
  } catch (const PropertyFailure& e) {
    o.verdict = Verdict::Fail;
    o.message = e.what();
  } catch (const Error& e) {
    o.verdict = is_internal(e.code()) ? Verdict::Fail : Verdict::Invalid;
    o.message = std::string(error_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    o.verdict = Verdict::Fail;
    o.message = std::string("exception: ") + e.what();
  }
  return o;
}

// ------------------------------------------------------------------ shrinking

namespace {

std::optional<RingElem> halve(const RingDesc& r, const RingElem& a) {
  if (r.is_zero(a)) return std::nullopt;
  switch (r.kind()) {
    case RingKind::Rationals: {
      mpz_class num = a.rational().get_num() / 2;
      return r.rational_elem(num, a.rational().get_den());
    }
    case RingKind::GaussianIntegers: {
      mpz_class re = a.gaussian().re / 2, im = a.gaussian().im / 2;
      return r.gaussian_elem(re, im);
    }
    default: {
      mpz_class v = r.lift(a).integer() / 2;
      return r.from_int(v);
    }
  }
}

/// Every single-entry halving of `m`, in row-major order.
void halvings(const Mat& m, const std::function<void(Mat)>& emit) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (auto h = halve(m.ring(), m(i, j))) {
        Mat c = m;
        c.set(i, j, *h);
        emit(std::move(c));
      }
}

std::vector<InputDoc> entry_candidates(const InputDoc& d) {
  std::vector<InputDoc> out;
  for (std::size_t k = 0; k < d.modules.size(); ++k)
    halvings(d.modules[k].rels, [&](Mat m) {
      InputDoc c = d;
      c.modules[k].rels = std::move(m);
      out.push_back(std::move(c));
    });
  for (std::size_t k = 0; k < d.morphisms.size(); ++k)
    halvings(d.morphisms[k].mat, [&](Mat m) {
      InputDoc c = d;
      c.morphisms[k].mat = std::move(m);
      out.push_back(std::move(c));
    });
  for (std::size_t k = 0; k < d.mats.size(); ++k)
    halvings(d.mats[k].mat, [&](Mat m) {
      InputDoc c = d;
      c.mats[k].mat = std::move(m);
      out.push_back(std::move(c));
    });
  return out;
}

/// Removes generator g of module `name` and every row or column indexed by it.
InputDoc delete_generator(const InputDoc& d, const std::string& name, std::size_t g) {
  InputDoc c = d;
  for (auto& m : c.modules)
    if (m.name == name) m.rels = m.rels.without_row(g);
  for (auto& f : c.morphisms) {
    if (f.target == name) f.mat = f.mat.without_row(g);
    if (f.source == name) f.mat = f.mat.without_col(g);
  }
  for (auto& m : c.mats) {
    if (m.rows_module == name) m.mat = m.mat.without_row(g);
    if (m.cols_module == name) m.mat = m.mat.without_col(g);
  }
  return c;
}

std::vector<InputDoc> generator_candidates(const InputDoc& d) {
  std::vector<InputDoc> out;
  for (const auto& m : d.modules)
    for (std::size_t g = 0; g < m.rels.rows(); ++g) out.push_back(delete_generator(d, m.name, g));
  return out;
}

std::vector<InputDoc> relation_candidates(const InputDoc& d) {
  std::vector<InputDoc> out;
  for (std::size_t k = 0; k < d.modules.size(); ++k)
    for (std::size_t r = 0; r < d.modules[k].rels.cols(); ++r) {
      InputDoc c = d;
      c.modules[k].rels = c.modules[k].rels.without_col(r);
      out.push_back(std::move(c));
    }
  return out;
}

}  // namespace

Shrunk shrink(const Suite& s, InputDoc doc, std::string message, std::size_t budget) {
  Shrunk res{std::move(doc), 0, std::move(message)};
  std::size_t spent = 0;
  using Pass = std::vector<InputDoc> (*)(const InputDoc&);
  const Pass passes[] = {entry_candidates, generator_candidates, relation_candidates};
  bool progress = true;
  while (progress && spent < budget) {
    progress = false;
    for (Pass pass : passes) {
      for (InputDoc& cand : pass(res.doc)) {
        if (spent >= budget) break;
        ++spent;
        Outcome o = evaluate(s, cand);
        if (o.verdict == Verdict::Fail) {
          res.doc = std::move(cand);
          res.message = std::move(o.message);
          ++res.steps;
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  return res;
}

// ------------------------------------------------------------------ driver

namespace {

struct InstanceResult {
  Outcome outcome;
  std::optional<Shrunk> shrunk;
  std::string original_message;
};

InstanceResult run_instance(const Suite& s, const std::vector<RingDesc>& rings, const HarnessConfig& cfg,
                            std::size_t index) {
  gen::Rng rng(gen::derive_seed(cfg.seed, s.name, index));
  const RingDesc& ring = rings[index % rings.size()];
  InstanceResult r;
  InputDoc doc;
  try {
    doc = s.generate(rng, ring, cfg);
  } catch (const std::exception& e) {
    r.outcome.verdict = Verdict::Fail;
    r.outcome.message = std::string("generator failed: ") + e.what();
    return r;
  }
  doc.params["suite"] = s.name;
  doc.params["index"] = index;
  doc.params["horizon"] = cfg.horizon;
  if (!cfg.fault.empty()) doc.params["fault"] = cfg.fault;
  r.outcome = evaluate(s, doc);
  if (r.outcome.verdict == Verdict::Fail) {
    r.original_message = r.outcome.message;
    r.shrunk = shrink(s, std::move(doc), r.outcome.message, cfg.shrink_budget);
  }
  return r;
}

}  // namespace

HarnessReport run_harness(const HarnessConfig& cfg) {
  cfg.validate();
  HarnessReport report;
  if (cfg.trials == 0) return report;
  for (const Suite& s : registered_suites()) {
    if (!cfg.suites.empty() && std::find(cfg.suites.begin(), cfg.suites.end(), s.name) == cfg.suites.end()) continue;
    std::vector<RingDesc> rings;
    for (const auto& r : cfg.rings)
      if (s.accepts(r)) rings.push_back(r);
    SuiteReport sr;
    sr.name = s.name;
    if (!rings.empty()) {
      std::vector<InstanceResult> results(cfg.trials);
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++) results[i] = run_instance(s, rings, cfg, i);
      };
      const std::size_t threads = std::min(cfg.parallelism, cfg.trials);
      std::vector<std::thread> pool;
      for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      sr.trials = cfg.trials;
      for (std::size_t i = 0; i < results.size(); ++i) {
        const InstanceResult& r = results[i];
        for (const auto& [k, v] : r.outcome.counters) sr.counters[k] += v;
        switch (r.outcome.verdict) {
          case Verdict::Pass: ++sr.passed; break;
          case Verdict::Invalid: ++sr.invalid; break;
          case Verdict::Fail: {
            ++sr.failed;
            json f{{"index", i}, {"message", r.original_message.empty() ? r.outcome.message : r.original_message}};
            if (r.shrunk) {
              f["shrunk_message"] = r.shrunk->message;
              f["shrink_steps"] = r.shrunk->steps;
              f["counterexample"] = input_to_json(r.shrunk->doc);
            }
            sr.failures.push_back(std::move(f));
          }
        }
      }
    }
    report.total_failures += sr.failed;
    report.suites.push_back(std::move(sr));
  }
  return report;
}

json HarnessReport::to_json(const HarnessConfig& cfg) const {
  json j;
  j["seed"] = std::to_string(cfg.seed);
  j["trials"] = cfg.trials;
  j["max_gens"] = cfg.max_gens;
  j["max_entry"] = cfg.max_entry;
  json rings = json::array();
  for (const auto& r : cfg.rings) rings.push_back(r.name());
  j["rings"] = std::move(rings);
  j["horizon"] = cfg.horizon;
  if (!cfg.fault.empty()) j["fault"] = cfg.fault;
  json suites_j = json::array();
  for (const auto& s : suites) {
    json counters = json::object();
    for (const auto& [k, v] : s.counters) counters[k] = v;
    suites_j.push_back(json{{"name", s.name},
                            {"trials", s.trials},
                            {"passed", s.passed},
                            {"failed", s.failed},
                            {"invalid", s.invalid},
                            {"counters", std::move(counters)},
                            {"failures", s.failures}});
  }
  j["suites"] = std::move(suites_j);
  j["total_failures"] = total_failures;
  return j;
}

Outcome replay(const InputDoc& doc) { return evaluate(find_suite(doc.param_string("suite")), doc); }

}  // namespace fpmod
