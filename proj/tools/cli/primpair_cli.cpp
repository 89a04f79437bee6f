#include "primpair_cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>

#include "primpair/certify.hpp"
#include "primpair/criteria.hpp"
#include "primpair/errors.hpp"
#include "primpair/pairs.hpp"
#include "primpair/serialize.hpp"

namespace primpair::cli {
namespace {

using serialize::json;
namespace fs = std::filesystem;

// Factorizations of q - 1 stored as one JSON file per value.
class FactorCache {
 public:
  explicit FactorCache(fs::path dir) : dir_(std::move(dir)) {}

  arith::Factorization get(const BigInt& n) {
    const fs::path file = dir_ / ("factor-" + to_decimal(n) + ".json");
    std::lock_guard lock(mu_);
    if (std::ifstream in(file); in) {
      try {
        auto f = serialize::factorization_from_json(json::parse(in));
        if (f.value() == n) return f;
      } catch (const std::exception&) {
        // Unreadable entry: recompute and overwrite.
      }
    }
    auto f = arith::factorize(n);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (std::ofstream out(file); out) out << serialize::to_json(f).dump() << "\n";
    return f;
  }

 private:
  fs::path dir_;
  std::mutex mu_;
};

criteria::ClassifyOptions classify_options(const RunConfig& c,
                                           std::shared_ptr<FactorCache> cache) {
  criteria::ClassifyOptions o;
  o.t = c.t;
  o.brute_field_cap = c.brute_cap;
  o.brute_pair_cap = c.pair_cap;
  o.jobs = c.jobs;
  o.factor_limit_bits = c.factor_limit_bits;
  if (cache) o.factor = [cache](const BigInt& n) { return cache->get(n); };
  return o;
}

std::string join(const std::vector<BigInt>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + to_decimal(xs[i]);
  return out;
}

void write_table(const criteria::GammaTable& t, Format format, std::ostream& out) {
  if (format == Format::Json) {
    for (const auto& row : t.rows) out << serialize::to_json(row).dump() << "\n";
    return;
  }
  if (format == Format::Csv) {
    out << "k,status,reason,ell,sieve_primes,delta,Delta\n";
    for (const auto& row : t.rows) {
      out << row.k << "," << criteria::status_name(row.status) << ","
          << criteria::reason_name(row.reason) << ",";
      if (const auto* s = std::get_if<criteria::BySieve>(&row.reason)) {
        const auto& c = s->certificate;
        out << to_decimal(c.ell_radical) << "," << join(c.sieve_primes, ";") << ","
            << to_decimal(c.delta) << "," << to_decimal(c.Delta);
      } else {
        out << ",,,";
      }
      out << "\n";
    }
    return;
  }
  out << std::left << std::setw(5) << "k" << std::setw(9) << "status" << std::setw(15)
      << "reason" << std::setw(8) << "l" << "{p_1..p_r}\n";
  for (const auto& row : t.rows) {
    out << std::setw(5) << row.k << std::setw(9) << criteria::status_name(row.status)
        << std::setw(15) << criteria::reason_name(row.reason);
    if (const auto* s = std::get_if<criteria::BySieve>(&row.reason)) {
      out << std::setw(8) << to_decimal(s->certificate.ell_radical) << "{"
          << join(s->certificate.sieve_primes, ",") << "}";
    }
    out << "\n";
  }
  const auto list = [](const std::vector<unsigned>& ks) {
    std::string s;
    for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + std::to_string(ks[i]);
    return s;
  };
  out << "in: " << list(t.in) << "\nout: " << list(t.out) << "\nunknown: " << list(t.unknown)
      << "\n";
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

polyff::RationalFunction random_function(const ff::FieldContext& ctx, unsigned m1,
                                         unsigned m2, std::mt19937_64& rng) {
  const std::uint64_t q = ctx.q();
  const std::uint64_t f1_count = to_u64(ipow(BigInt(q), m1 + 1));
  const auto f1 = polyff::poly_from_index(ctx, 1 + below(rng, f1_count - 1));
  const unsigned d = static_cast<unsigned>(below(rng, m2 + 1));
  const std::uint64_t qd = to_u64(ipow(BigInt(q), d));
  const auto f2 = polyff::poly_from_index(ctx, qd + below(rng, qd));
  return polyff::RationalFunction::canonical(ctx, f1, f2);
}

std::optional<polyff::RationalFunction> random_admissible(const ff::FieldContext& ctx,
                                                          unsigned m1, unsigned m2,
                                                          std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto f = random_function(ctx, m1, m2, rng);
    if (polyff::in_upsilon(ctx, f, m1, m2)) return f;
  }
  return std::nullopt;
}

json record(const std::string& check, std::uint64_t q, json f, std::uint64_t l1,
            std::uint64_t l2, json lhs, json rhs, bool pass) {
  return {{"check", check}, {"q", std::to_string(q)}, {"f", std::move(f)},
          {"l1", std::to_string(l1)}, {"l2", std::to_string(l2)}, {"lhs", std::move(lhs)},
          {"rhs", std::move(rhs)}, {"pass", pass}};
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const auto ctx = ff::FieldContext::build(c.p, c.k);
  const std::uint64_t q = ctx.q();
  const auto& qm1 = ctx.qm1_factorization();
  std::vector<std::uint64_t> divisors;
  for (const auto& sd : arith::squarefree_divisors(qm1)) divisors.push_back(to_u64(sd.divisor));
  std::mt19937_64 rng(c.seed);
  bool all_pass = true;
  const auto emit = [&](const json& r) {
    all_pass = all_pass && r["pass"].get<bool>();
    out << r.dump() << "\n";
  };

  for (unsigned i = 0; i < c.samples; ++i) {
    const auto f = random_function(ctx, c.m1, c.m2, rng);
    const json fj = serialize::to_json(ctx, f);
    for (std::uint64_t l1 : divisors) {
      for (std::uint64_t l2 : divisors) {
        const auto exact = pairs::count_free_pairs(ctx, f, l1, l2).count;
        const double approx = pairs::n_f_via_characters(ctx, f, l1, l2).real();
        const bool pass = std::abs(approx - static_cast<double>(exact)) < 1e-6 * q;
        emit(record("char_identity", q, fj, l1, l2, std::to_string(exact), approx, pass));
      }
    }
  }

  if (q >= 4) {
    for (unsigned i = 0; i < c.samples; ++i) {
      const auto f = random_admissible(ctx, c.m1, c.m2, rng);
      if (!f) break;
      const json fj = serialize::to_json(ctx, *f);
      for (std::uint64_t l1 : divisors) {
        for (std::uint64_t l2 : divisors) {
          const auto n = pairs::count_free_pairs(ctx, *f, l1, l2, c.m1, c.m2);
          const bool pass = Rational(from_u64(n.count)) >= *n.lower_bound;
          emit(record("lower_bound", q, fj, l1, l2, std::to_string(n.count),
                      to_decimal(*n.lower_bound), pass));
        }
      }
      BigInt ell = 1;
      const auto primes = qm1.primes();
      for (std::size_t s = 0; s <= primes.size(); ++s) {
        if (s > 0) ell *= primes[s - 1];
        std::vector<std::uint64_t> sieve;
        for (std::size_t j = s; j < primes.size(); ++j) sieve.push_back(to_u64(primes[j]));
        const auto sides =
            pairs::sieve_inequality_check(ctx, *f, qm1.restrict_to(ell), sieve);
        const std::uint64_t l = to_u64(ell);
        emit(record("sieve", q, fj, l, l, std::to_string(sides.lhs), std::to_string(sides.rhs),
                    sides.lhs >= sides.rhs));
      }
    }
  }

  if (q > 2) {
    const auto irreducibles = polyff::monic_irreducibles(ctx, std::min(2U, c.m1 + c.m2));
    for (unsigned i = 0; i < c.samples; ++i) {
      const unsigned count = 1 + static_cast<unsigned>(below(rng, 3));
      std::vector<pairs::HFactor> h;
      for (unsigned j = 0; j < count; ++j) {
        const auto& g = irreducibles[below(rng, irreducibles.size())];
        std::int64_t e = static_cast<std::int64_t>(below(rng, 6)) - 3;
        if (e >= 0) ++e;
        h.push_back({g, e});
      }
      const auto chi = pairs::character(ctx, 1 + static_cast<std::uint32_t>(
                                                     below(rng, ctx.group_order() - 1)));
      const auto sum = pairs::character_sum(ctx, h, chi);
      if (!sum.hypothesis_holds) continue;
      json hj = json::array();
      for (const auto& hf : h) {
        hj.push_back({{"poly", serialize::to_json(ctx, hf.poly)}, {"exponent", hf.exponent}});
      }
      const double mag = std::abs(sum.value);
      emit(record("weil", q, hj, chi.n, chi.order, mag, sum.weil_budget,
                  mag <= sum.weil_budget + 1e-9));
    }
  }
  return all_pass ? kExitOk : kExitUsage;
}

int dispatch(const RunConfig& c, std::ostream& out) {
  std::shared_ptr<FactorCache> cache;
  if (c.cache_dir && !c.cache_dir->empty()) cache = std::make_shared<FactorCache>(*c.cache_dir);
  switch (c.command) {
    case Command::Classify: {
      const auto v = criteria::classify(c.p, c.k, c.m1, c.m2, classify_options(c, cache));
      out << serialize::to_json(v).dump() << "\n";
      return kExitOk;
    }
    case Command::Table: {
      const auto t = criteria::gamma_table(c.p, c.m1, c.m2, c.k_max, classify_options(c, cache));
      write_table(t, c.format, out);
      return kExitOk;
    }
    case Command::Certify: {
      const auto ctx = ff::FieldContext::build(c.p, c.k);
      certify::CertifyOptions o;
      o.pair_cap = c.pair_cap;
      o.jobs = c.jobs;
      const auto r = certify::certify_k(ctx, c.m1, c.m2, o);
      out << serialize::to_json(ctx, r, c.timing).dump() << "\n";
      return kExitOk;
    }
    case Command::Verify:
      return run_verify(c, out);
    case Command::Factor: {
      const BigInt n = parse_decimal(c.number);
      const auto f = cache ? cache->get(n) : arith::factorize(n);
      out << serialize::to_json(f).dump() << "\n";
      return kExitOk;
    }
  }
  return kExitUsage;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.pair_cap > kSafePairCap && !config.unsafe_cap) {
    err << "error: --cap above " << kSafePairCap << " needs --unsafe-cap\n";
    return kExitUsage;
  }
  if (config.jobs == 0) {
    err << "error: --jobs must be >= 1\n";
    return kExitUsage;
  }
  try {
    return dispatch(config, out);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* dir = std::getenv("PRIMPAIR_CACHE_DIR")) c.cache_dir = dir;

  CLI::App app{"Primitive pairs (alpha, f(alpha)) over finite fields"};
  app.require_subcommand(1);
  const auto field_opts = [&](CLI::App* sub) {
    sub->add_option("-p", c.p, "characteristic")->required();
    sub->add_option("--m1", c.m1, "degree bound of the numerator")->required();
    sub->add_option("--m2", c.m2, "degree bound of the denominator")->required();
    sub->add_option("--jobs", c.jobs, "worker threads");
  };

  auto* classify = app.add_subcommand("classify", "decide k in Gamma_p(m1, m2)");
  field_opts(classify);
  classify->add_option("-k", c.k, "extension degree")->required();
  classify->add_option("--brute-cap", c.brute_cap, "largest q handed to brute force");
  classify->add_option("--t", c.t, "exponent t > 4 of the explicit bound");
  classify->add_option("--factor-limit-bits", c.factor_limit_bits,
                       "skip factoring q - 1 above this many bits");

  auto* table = app.add_subcommand("table", "classify k = 1..kmax");
  field_opts(table);
  table->add_option("--kmax", c.k_max, "largest k")->required();
  table->add_option("--brute-cap", c.brute_cap, "largest q handed to brute force");
  table->add_option("--t", c.t, "exponent t > 4 of the explicit bound");
  table->add_option("--factor-limit-bits", c.factor_limit_bits,
                    "skip factoring q - 1 above this many bits");
  std::string format = "csv";
  table->add_option("--format", format, "csv, json or pretty")
      ->check(CLI::IsMember({"csv", "json", "pretty"}));

  auto* cert = app.add_subcommand("certify", "exhaustive search over Upsilon_q(m1, m2)");
  field_opts(cert);
  cert->add_option("-k", c.k, "extension degree")->required();
  cert->add_option("--cap", c.pair_cap, "largest number of (f1, f2) pairs");
  cert->add_flag("--unsafe-cap", c.unsafe_cap, "allow --cap beyond 1e10");
  cert->add_flag("--timing", c.timing, "include wall time in the report");

  auto* verify = app.add_subcommand("verify", "numeric checks of the counting bounds");
  field_opts(verify);
  verify->add_option("-k", c.k, "extension degree")->required();
  verify->add_option("--samples", c.samples, "random functions per check");
  verify->add_option("--seed", c.seed, "random seed");

  auto* factor = app.add_subcommand("factor", "factor a positive integer");
  factor->add_option("n", c.number, "decimal integer")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out;
    std::ostringstream msg_err;
    const int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (classify->parsed()) c.command = Command::Classify;
  if (table->parsed()) c.command = Command::Table;
  if (cert->parsed()) c.command = Command::Certify;
  if (verify->parsed()) c.command = Command::Verify;
  if (factor->parsed()) c.command = Command::Factor;
  c.format = format == "json" ? Format::Json : format == "pretty" ? Format::Pretty : Format::Csv;
  return run(c, out, err);
}

}  // namespace primpair::cli
