#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "charkernel/corpus.hpp"
#include "charkernel/errors.hpp"
#include "charkernel/groupspec.hpp"
#include "charkernel/verify.hpp"

using namespace charkernel;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

Json table_json(const std::string& spec, const CharacterTable& T) {
  const PermGroup& G = T.group;
  Json classes = Json::array();
  for (std::size_t k = 0; k < T.representatives.size(); ++k) {
    classes.push_back(Json{{"representative", G.element(T.representatives[k]).to_string()},
                           {"size", T.class_sizes[k]},
                           {"order", T.element_orders[k]}});
  }
  Json rows = Json::array();
  for (const auto& chi : T.irreducibles) rows.push_back(chi.to_strings());
  return Json{{"spec", spec},
              {"order", G.order()},
              {"degree", G.degree()},
              {"classes", std::move(classes)},
              {"characters", std::move(rows)}};
}

void print_table(std::ostream& os, const std::string& spec, const CharacterTable& T) {
  const std::size_t r = T.size();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> sizes, orders;
  for (std::size_t k = 0; k < r; ++k) {
    sizes.push_back(std::to_string(T.class_sizes[k]));
    orders.push_back(std::to_string(T.element_orders[k]));
  }
  for (const auto& chi : T.irreducibles) cells.push_back(chi.to_strings());

  std::vector<std::size_t> width(r, 1);
  for (std::size_t k = 0; k < r; ++k) {
    width[k] = std::max(sizes[k].size(), orders[k].size());
    for (const auto& row : cells) width[k] = std::max(width[k], row[k].size());
  }
  const std::size_t label = std::to_string(r).size() + 2;

  os << spec << "  order " << T.group.order() << ", " << r << " classes\n\n";
  auto line = [&](const std::string& head, const std::vector<std::string>& vals) {
    os << std::left << std::setw(static_cast<int>(label + 1)) << head;
    for (std::size_t k = 0; k < r; ++k) os << ' ' << std::right << std::setw(static_cast<int>(width[k])) << vals[k];
    os << '\n';
  };
  line("size", sizes);
  line("ord", orders);
  os << '\n';
  for (std::size_t i = 0; i < r; ++i) line("X." + std::to_string(i + 1), cells[i]);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split_list(text)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw PreconditionError("not a prime: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

std::string report_line(const VerificationReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(40) << r.spec << ' ' << std::setw(9) << r.theorem << ' ' << std::setw(5)
     << (r.prime ? "p=" + std::to_string(*r.prime) : "") << ' ' << to_string(r.status);
  if (!r.message.empty() && r.status != Status::Pass) os << "  (" << r.message << ")";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact character tables and kernel/codegree checks for finite permutation groups"};
  app.require_subcommand(1);
  std::size_t element_cap = default_element_cap();
  app.add_option("--element-cap", element_cap, "Refuse groups with more elements (env CHARKERNEL_ELEMENT_CAP)")
      ->capture_default_str();
  TableOptions table_opts;
  app.add_option("--class-cap", table_opts.class_cap, "Refuse tables with more classes")->capture_default_str();

  auto* table_cmd = app.add_subcommand("table", "Print the character table of a group");
  std::string table_spec;
  bool table_as_json = false;
  table_cmd->add_option("spec", table_spec, "Group spec, e.g. S4 or frob(7,3)xC2")->required();
  table_cmd->add_flag("--json", table_as_json, "Emit JSON");

  auto* verify_cmd = app.add_subcommand("verify", "Run one check on one group");
  std::string theorem, group_spec;
  std::optional<std::uint64_t> prime;
  bool no_timing = false;
  verify_cmd->add_option("--theorem", theorem, "Check id")->required()->check(CLI::IsMember(theorem_ids()));
  verify_cmd->add_option("--group", group_spec, "Group spec")->required();
  verify_cmd->add_option("--prime", prime, "Prime (not used by sec3 and codegree)");
  verify_cmd->add_flag("--no-timing", no_timing, "Omit the millis field");

  auto* corpus_cmd = app.add_subcommand("corpus", "Run the curated corpus");
  CorpusOptions copts;
  std::string primes_text = "2,3,5,7", theorems_text, out_path;
  bool corpus_json = false, corpus_quiet = false;
  corpus_cmd->add_option("--filter", copts.filter, "e.g. 'order<=60,tag=solvable'");
  corpus_cmd->add_option("--primes", primes_text, "Comma-separated primes")->capture_default_str();
  corpus_cmd->add_option("--theorems", theorems_text, "Comma-separated check ids (default all)");
  corpus_cmd->add_flag("--extended", copts.extended, "Include gated entries");
  corpus_cmd->add_option("--out", out_path, "Write the JSON report here");
  corpus_cmd->add_option("--jobs,-j", copts.jobs, "Worker threads")->capture_default_str();
  corpus_cmd->add_option("--time-budget", copts.time_budget, "Seconds per entry, 0 = unlimited")
      ->capture_default_str();
  corpus_cmd->add_flag("--no-timing", no_timing, "Omit millis fields from JSON");
  corpus_cmd->add_flag("--json", corpus_json, "Print the JSON report to stdout");
  corpus_cmd->add_flag("--quiet,-q", corpus_quiet, "Only print the summary");

  auto* parse_cmd = app.add_subcommand("parse", "Parse a spec and dump its syntax tree");
  std::string parse_text;
  bool parse_as_json = false;
  parse_cmd->add_option("spec", parse_text, "Group spec")->required();
  parse_cmd->add_flag("--json", parse_as_json, "Emit canonical form, order and degree as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table_cmd) {
      PermGroup G = build(table_spec, element_cap);
      const CharacterTable T = character_table(G, table_opts);
      const std::string canon = render(parse_spec(table_spec));
      if (table_as_json) {
        std::cout << table_json(canon, T).dump(2) << '\n';
      } else {
        print_table(std::cout, canon, T);
      }
      return 0;
    }

    if (*verify_cmd) {
      if (theorem_uses_prime(theorem) && !prime) {
        std::cerr << "error: --theorem " << theorem << " needs --prime\n";
        return kExitUsage;
      }
      if (prime && !is_prime(*prime)) {
        std::cerr << "error: " << *prime << " is not prime\n";
        return kExitUsage;
      }
      const std::string canon = render(parse_spec(group_spec));
      VerificationReport r;
      try {
        GroupContext ctx(build(group_spec, element_cap), canon, table_opts);
        r = run_check(ctx, theorem, theorem_uses_prime(theorem) ? prime : std::nullopt);
      } catch (const ResourceError& e) {
        r.spec = canon;
        r.prime = prime;
        r.theorem = theorem;
        r.status = Status::Error;
        r.message = e.what();
      }
      std::cout << r.to_json(!no_timing).dump(2) << '\n';
      if (r.status == Status::Fail) return kExitFail;
      if (r.status == Status::Error) return kExitError;
      return 0;
    }

    if (*corpus_cmd) {
      copts.primes = parse_primes(primes_text);
      copts.theorems = split_list(theorems_text);
      copts.element_cap = element_cap;
      copts.table = table_opts;
      const bool lines = !corpus_json && !corpus_quiet;
      const CorpusResult result = run_corpus(copts, [&](const std::vector<VerificationReport>& reps) {
        if (!lines) return;
        for (const auto& r : reps) std::cout << report_line(r) << '\n';
        std::cout.flush();
      });
      const Json doc = result.to_json(!no_timing);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
          std::cerr << "error: cannot write " << out_path << '\n';
          return kExitError;
        }
        out << doc.dump(2) << '\n';
      }
      if (corpus_json) {
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << result.entries << " groups, " << result.reports.size() << " checks: " << result.pass
                  << " pass, " << result.fail << " fail, " << result.not_applicable << " n/a, " << result.error
                  << " error\n";
      }
      return result.ok() ? 0 : kExitFail;
    }

    if (*parse_cmd) {
      const GroupSpec s = parse_spec(parse_text);
      if (parse_as_json) {
        std::cout << Json{{"canonical", render(s)}, {"order", predicted_order(s)}, {"degree", predicted_degree(s)}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << dump_ast(s);
      }
      return 0;
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
