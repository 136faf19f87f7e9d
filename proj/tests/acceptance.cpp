// Acceptance suite: every criterion prints exactly one PASS/FAIL line.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "addcomb/census.hpp"
#include "addcomb/forms.hpp"
#include "addcomb/intset.hpp"
#include "addcomb/mstd.hpp"
#include "addcomb/poly.hpp"
#include "addcomb/repfn.hpp"
#include "addcomb/serialize.hpp"

using namespace addcomb;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

const IntSet kCounterexample({0, 2, 3, 4, 7, 11, 12, 14});

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int g_failures = 0;

void criterion(int num, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << name
              << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    if (!ok) {
        ++g_failures;
    }
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("addcomb-acceptance-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

TempDir g_tmp;
int g_run_counter = 0;

/// Runs the CLI, returns (exit code, stdout bytes).
std::pair<int, std::string> run_cli(const std::string& args) {
    const auto out_file = g_tmp.path / ("out" + std::to_string(g_run_counter++));
    const std::string cmd =
        std::string(ADDCOMB_CLI_PATH) + " " + args + " > " + out_file.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

IntSet random_set(std::mt19937_64& rng, size_t max_card, int64_t lo, int64_t hi) {
    std::uniform_int_distribution<size_t> card(1, max_card);
    std::uniform_int_distribution<int64_t> val(lo, hi);
    std::vector<int64_t> v;
    const size_t n = card(rng);
    for (size_t i = 0; i < n; ++i) {
        v.push_back(val(rng));
    }
    return IntSet(std::move(v));
}

uint64_t rep_count_enum(const IntSet& a, uint32_t h, int64_t n) {
    const auto& e = a.elements();
    uint64_t count = 0;
    std::vector<size_t> idx(h, 0);
    while (true) {
        int64_t sum = 0;
        for (size_t i : idx) {
            sum += e[i];
        }
        count += sum == n ? 1 : 0;
        size_t pos = h;
        bool done = true;
        while (pos-- > 0) {
            if (idx[pos] + 1 < e.size()) {
                ++idx[pos];
                for (size_t j = pos + 1; j < h; ++j) {
                    idx[j] = idx[pos];
                }
                done = false;
                break;
            }
        }
        if (done) {
            return count;
        }
    }
}

}  // namespace

int main() {
    criterion(1, "counterexample reproduction: |A+A| = 26 > 25 = |A-A|, < 1 ms", [](std::string& d) {
        const auto t0 = Clock::now();
        const uint64_t s = sumset(kCounterexample, kCounterexample).size();
        const uint64_t diff = diffset(kCounterexample, kCounterexample).size();
        const SdClass cls = classify(kCounterexample);
        const double elapsed = ms_since(t0);
        d = "sum " + std::to_string(s) + ", diff " + std::to_string(diff) + ", " +
            std::to_string(elapsed) + " ms";
        if (s != 26 || diff != 25 || cls != SdClass::sum_dominant || elapsed >= 1.0) {
            return false;
        }
        const auto [code, out] = run_cli("verify --set '{0,2,3,4,7,11,12,14}'");
        if (code != 0) {
            return false;
        }
        const json p = json::parse(out).at("payload");
        return p.at("sum_card") == 26 && p.at("diff_card") == 25 && p.at("class") == "sum-dominant";
    });

    criterion(2, "five-element example: exact sumset and diffset displays", [](std::string& d) {
        const IntSet five({0, 2, 3, 4, 7});
        const IntSet s = sumset(five, five);
        const IntSet diff = diffset(five, five);
        d = "sum card " + std::to_string(s.size()) + ", diff card " + std::to_string(diff.size());
        std::vector<int64_t> want_s;
        for (int64_t v = 0; v <= 14; ++v) {
            if (v != 1 && v != 12 && v != 13) {
                want_s.push_back(v);
            }
        }
        std::vector<int64_t> want_d;
        for (int64_t v = -7; v <= 7; ++v) {
            if (v != -6 && v != 6) {
                want_d.push_back(v);
            }
        }
        return s == IntSet::from_sorted(want_s) && s.size() == 12 &&
               diff == IntSet::from_sorted(want_d) && diff.size() == 13;
    });

    criterion(3, "lift identities: m = 29, t in {2,3}, 26^t and 25^t, t = 3 under 10 s",
              [](std::string& d) {
                  const auto t0 = Clock::now();
                  const IntSet a2 = lift(kCounterexample, LiftParams{29, 2});
                  const bool ok2 =
                      sumset(a2, a2).size() == 676 && diffset(a2, a2).size() == 625;
                  const IntSet a3 = lift(kCounterexample, LiftParams{29, 3});
                  const bool ok3 =
                      sumset(a3, a3).size() == 17576 && diffset(a3, a3).size() == 15625;
                  const double elapsed = ms_since(t0);
                  d = std::to_string(elapsed) + " ms";
                  return ok2 && ok3 && elapsed < 10'000.0;
              });

    criterion(4, "orosz witnesses: 14/13 and 13/14 for all coprime 3 <= u <= 20, 13>12 for u = 2",
              [](std::string& d) {
                  const auto t0 = Clock::now();
                  for (int64_t u = 3; u <= 20; ++u) {
                      for (int64_t v = 1; v < u; ++v) {
                          if (std::gcd(u, v) != 1) {
                              continue;
                          }
                          const OroszWitnesses w = orosz_witnesses(u, v);
                          const BinaryForm f{u, v};
                          const BinaryForm g{u, -v};
                          if (eval_form(f, w.a).size() != 14 || eval_form(g, w.a).size() != 13 ||
                              eval_form(f, w.b).size() != 13 || eval_form(g, w.b).size() != 14) {
                              d = "failed at u=" + std::to_string(u) + ", v=" + std::to_string(v);
                              return false;
                          }
                      }
                  }
                  const OroszWitnesses w21 = orosz_witnesses(2, 1);
                  const BinaryForm f21{2, 1};
                  const BinaryForm g21{2, -1};
                  const bool ok21 =
                      eval_form(f21, w21.a).size() == 13 && eval_form(g21, w21.a).size() == 12 &&
                      eval_form(f21, w21.b).size() == 13 && eval_form(g21, w21.b).size() == 14;
                  const double elapsed = ms_since(t0);
                  d = std::to_string(elapsed) + " ms";
                  return ok21 && elapsed < 1'000.0;
              });

    criterion(5, "census sanity: f(n <= 8) = 0 by two classifiers, f(15) >= 1 with the known witness, "
                 "n = 15 < 5 s, n = 20 with 8 shards < 5 min, shard-invariant",
              [](std::string& d) {
                  // two independent classifiers agree mask-by-mask for n <= 8
                  for (uint32_t n = 1; n <= 8; ++n) {
                      uint64_t f_fast = 0;
                      uint64_t f_oracle = 0;
                      for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
                          const SdClass fast = classify_mask(n, mask);
                          const SdClass oracle = classify_mask_pairwise(mask);
                          if (fast != oracle) {
                              d = "classifier disagreement at n=" + std::to_string(n);
                              return false;
                          }
                          f_fast += fast == SdClass::sum_dominant ? 1 : 0;
                          f_oracle += oracle == SdClass::sum_dominant ? 1 : 0;
                      }
                      if (f_fast != 0 || f_oracle != 0) {
                          d = "f(" + std::to_string(n) + ") != 0";
                          return false;
                      }
                  }

                  const auto t15 = Clock::now();
                  CensusOptions o15;
                  o15.n = 15;
                  o15.threads = 1;
                  const CensusOutcome r15 = run_census(o15);
                  const double ms15 = ms_since(t15);
                  if (!r15.complete || r15.result.f_n < 1) {
                      d = "f(15) < 1";
                      return false;
                  }
                  const uint64_t ce_mask = 22685;
                  if (std::find(r15.result.witness_masks.begin(), r15.result.witness_masks.end(),
                                ce_mask) == r15.result.witness_masks.end()) {
                      d = "counterexample missing from witnesses";
                      return false;
                  }
                  if (ms15 >= 5'000.0) {
                      d = "n=15 took " + std::to_string(ms15) + " ms";
                      return false;
                  }

                  const auto t20 = Clock::now();
                  CensusOptions o20;
                  o20.n = 20;
                  o20.shards = 8;
                  const CensusOutcome sharded = run_census(o20);
                  const double ms20 = ms_since(t20);
                  CensusOptions o20p;
                  o20p.n = 20;
                  const CensusOutcome plain = run_census(o20p);
                  if (!sharded.complete || !plain.complete) {
                      return false;
                  }
                  const bool equal = sharded.result.per_k == plain.result.per_k &&
                                     sharded.result.f_n == plain.result.f_n &&
                                     sharded.result.witness_masks == plain.result.witness_masks;
                  d = "f(15) = " + std::to_string(r15.result.f_n) + ", n=15 " + std::to_string(ms15) +
                      " ms, n=20 sharded " + std::to_string(ms20) + " ms, f(20) = " +
                      std::to_string(plain.result.f_n);
                  return equal && ms20 < 300'000.0;
              });

    criterion(6, "oracle equivalence: bitmap vs pairs (2^11 sets), convolution vs tuples (1000 sets), "
                 "nary vs binary (1000 cases), zero mismatches",
              [](std::string& d) {
                  for (uint32_t mask = 1; mask < (1u << 11); ++mask) {
                      std::vector<int64_t> elems;
                      for (uint32_t m = mask; m != 0; m &= m - 1) {
                          elems.push_back(std::countr_zero(m));
                      }
                      const IntSet a(std::move(elems));
                      if (sumset_bitmap(a, a) != sumset_pairwise(a, a) ||
                          diffset_bitmap(a, a) != diffset_pairwise(a, a)) {
                          d = "bitmap mismatch at mask " + std::to_string(mask);
                          return false;
                      }
                  }

                  std::mt19937_64 rng(606);
                  for (int i = 0; i < 1000; ++i) {
                      const IntSet a = random_set(rng, 7, -12, 12);
                      for (uint32_t h : {2u, 3u}) {
                          const RepProfile p = rep_profile(a, h, h * a.min(), h * a.max());
                          for (int64_t n = h * a.min(); n <= h * a.max(); ++n) {
                              if (p.counts[static_cast<size_t>(n - h * a.min())] !=
                                  rep_count_enum(a, h, n)) {
                                  d = "profile mismatch";
                                  return false;
                              }
                          }
                      }
                  }

                  std::uniform_int_distribution<int64_t> coeff(-9, 9);
                  for (int i = 0; i < 1000; ++i) {
                      int64_t u = 0;
                      int64_t v = 0;
                      while (u == 0) {
                          u = coeff(rng);
                      }
                      while (v == 0) {
                          v = coeff(rng);
                      }
                      const IntSet a = random_set(rng, 8, -25, 25);
                      if (eval_nary(NaryForm{{u, v}}, a) != eval_form(BinaryForm{u, v}, a)) {
                          d = "nary mismatch";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(7, "property suites: affine invariance, symmetric balance, 3-set counts, normalization "
                 "(10^4 cases each), zero violations",
              [](std::string& d) {
                  std::mt19937_64 rng(707);
                  std::uniform_int_distribution<int64_t> xs(-60, 60);
                  std::uniform_int_distribution<int64_t> ys(1, 6);
                  for (int i = 0; i < 10'000; ++i) {
                      const IntSet a = random_set(rng, 9, -40, 40);
                      const int64_t x = xs(rng);
                      const int64_t y = ys(rng) * (i % 2 == 0 ? 1 : -1);
                      const IntSet im = translate(dilate(a, y), x);
                      if (sumset(im, im).size() != sumset(a, a).size() ||
                          diffset(im, im).size() != diffset(a, a).size()) {
                          d = "affine invariance violated";
                          return false;
                      }
                  }

                  std::uniform_int_distribution<int64_t> vals(-150, 150);
                  std::uniform_int_distribution<int> halves(1, 5);
                  for (int i = 0; i < 10'000; ++i) {
                      const int64_t z = vals(rng);
                      std::vector<int64_t> elems;
                      for (int j = halves(rng); j > 0; --j) {
                          const int64_t h = vals(rng);
                          elems.push_back(h);
                          elems.push_back(z - h);
                      }
                      const IntSet a(std::move(elems));
                      if (!symmetry_center(a) || classify(a) != SdClass::balanced) {
                          d = "symmetric set not balanced";
                          return false;
                      }
                  }

                  for (int64_t a = 0; a <= 12; ++a) {
                      for (int64_t b = a + 1; b <= 12; ++b) {
                          for (int64_t c = b + 1; c <= 12; ++c) {
                              if (a + c == 2 * b) {
                                  continue;
                              }
                              const IntSet s({a, b, c});
                              if (sumset(s, s).size() != 6 || diffset(s, s).size() != 7) {
                                  d = "3-set counts violated";
                                  return false;
                              }
                          }
                      }
                  }

                  std::uniform_int_distribution<int64_t> coeff(-12, 12);
                  for (int i = 0; i < 10'000; ++i) {
                      int64_t u = 0;
                      int64_t v = 0;
                      while (u == 0) {
                          u = coeff(rng);
                      }
                      while (v == 0) {
                          v = coeff(rng);
                      }
                      const NormalizedBinaryForm n = normalize(BinaryForm{u, v});
                      const int64_t av = n.v < 0 ? -n.v : n.v;
                      if (!(n.u >= av && av >= 1) || std::gcd(n.u, n.v) != 1 ||
                          normalize(BinaryForm{n.u, n.v}) != n) {
                          d = "normalization violated";
                          return false;
                      }
                      const IntSet a = random_set(rng, 6, -20, 20);
                      if (eval_form(BinaryForm{n.u, n.v}, a).size() !=
                          eval_form(BinaryForm{u, v}, a).size()) {
                          d = "normalization changed an image cardinality";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(8, "modular transfer: m = 29 member with the reduced counterexample, m = 2 and 3 "
                 "non-member by full scans",
              [](std::string& d) {
                  const Poly f = parse_poly("x+y");
                  const Poly g = parse_poly("x-y");
                  const MfgReport r29 = probe_Mfg(f, g, 29);
                  if (r29.status != MfgStatus::member || !r29.witness ||
                      r29.witness->residues != std::vector<int64_t>{0, 2, 3, 4, 7, 11, 12, 14} ||
                      r29.witness_f_card != 26 || r29.witness_g_card != 25) {
                      d = "m = 29 membership failed";
                      return false;
                  }
                  for (int64_t m : {2, 3}) {
                      if (probe_Mfg(f, g, m).status != MfgStatus::non_member_exhaustive) {
                          d = "m = " + std::to_string(m) + " not non-member-exhaustive";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(9, "determinism: byte-identical payloads, checkpoint resume of n = 18 byte-for-byte",
              [](std::string& d) {
                  const std::string cmds[] = {
                      "verify --set '{0,2,3,4,7,11,12,14}'",
                      "census --n 14 --shards 4",
                      "forms triple --f 2,1 --g 2,-1 --max-diam 7 --max-card 4",
                  };
                  for (const std::string& cmd : cmds) {
                      const auto [c1, o1] = run_cli(cmd);
                      const auto [c2, o2] = run_cli(cmd);
                      if (c1 != 0 || c2 != 0 ||
                          json::parse(o1).at("payload").dump() != json::parse(o2).at("payload").dump()) {
                          d = "payload mismatch for: " + cmd;
                          return false;
                      }
                  }

                  const auto ckpt = g_tmp.path / "n18.ckpt";
                  const std::string base = "census --n 18 --shards 2";
                  const auto [cu, uninterrupted] = run_cli(base);
                  const auto [ci, interrupted] =
                      run_cli(base + " --checkpoint " + ckpt.string() + " --limit-masks 60000");
                  if (cu != 0 || ci != 0 ||
                      json::parse(interrupted).at("payload").at("complete") != false) {
                      d = "interrupt phase failed";
                      return false;
                  }
                  const auto [cr, resumed] = run_cli(base + " --checkpoint " + ckpt.string());
                  if (cr != 0) {
                      d = "resume phase failed";
                      return false;
                  }
                  const std::string a = json::parse(uninterrupted).at("payload").dump();
                  const std::string b = json::parse(resumed).at("payload").dump();
                  d = "f(18) = " + json::parse(resumed).at("payload").at("f_n").dump();
                  return a == b && !a.empty();
              });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failures) + " CRITERIA FAILED")
              << "\n";
    return g_failures == 0 ? 0 : 1;
}
