#include <gtest/gtest.h>

#include <cctype>
#include <random>

#include "charkernel/corpus.hpp"
#include "charkernel/errors.hpp"
#include "charkernel/groupspec.hpp"
#include "charkernel/numtheory.hpp"
#include "charkernel/structure.hpp"
#include "support.hpp"

using namespace charkernel;

namespace {

std::string random_atom(std::mt19937_64& rng, int depth) {
  auto pick = [&](std::initializer_list<const char*> xs) {
    std::uniform_int_distribution<std::size_t> d(0, xs.size() - 1);
    return std::string(*(xs.begin() + d(rng)));
  };
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 9 : 8);
  std::uniform_int_distribution<int> small(1, 40);
  switch (kind(rng)) {
    case 0: return "C" + std::to_string(small(rng));
    case 1: return "D" + std::to_string(2 * (small(rng) + 1));
    case 2: return "Q" + pick({"8", "16", "32", "64"});
    case 3: return "S" + std::to_string(small(rng) % 20 + 1);
    case 4: return "A" + std::to_string(small(rng) % 20 + 1);
    case 5: return "frob(" + pick({"3,2", "5,2", "11,2", "7,3", "7,2", "13,3", "11,5", "31,5"}) + ")";
    case 6: return "heis(" + pick({"2", "3", "5", "7"}) + ")";
    case 7: return pick({"SL", "GL", "PSL"}) + "(2," + pick({"2", "3", "4", "5", "7"}) + ")";
    case 8: return "C" + std::to_string(small(rng) * 7);
    default: return "wr2(" + random_atom(rng, depth - 1) + ")";
  }
}

std::string random_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> factors(1, 3);
  std::string s;
  for (int i = factors(rng); i > 0; --i) s += random_atom(rng, 2) + (i > 1 ? "x" : "");
  return s;
}

/// Same spec with random case and spacing between tokens.
std::string scramble(std::mt19937_64& rng, const std::string& s) {
  std::bernoulli_distribution coin(0.3);
  std::string out;
  for (char c : s) {
    const bool boundary = c == '(' || c == ')' || c == ',' || c == 'x';
    if (boundary && coin(rng)) out += ' ';
    out += coin(rng) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                     : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (boundary && coin(rng)) out += "  ";
  }
  return out;
}

std::size_t error_position(std::string_view text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no error for " << text;
  return 0;
}

}  // namespace

TEST(Grammar, Examples) {
  const PermGroup S4 = build("S4");
  EXPECT_EQ(S4.order(), 24u);
  EXPECT_EQ(S4.degree(), 4u);
  const PermGroup S3C2 = build("S3xC2");
  EXPECT_EQ(S3C2.order(), 12u);
  EXPECT_EQ(S3C2.degree(), 5u);
}

TEST(Grammar, FrobFiveTwoIsDihedralOfOrderTen) {
  const PermGroup G = build("frob(5,2)");
  EXPECT_EQ(G.order(), 10u);
  EXPECT_EQ(G.degree(), 5u);
  std::map<unsigned, int> orders;
  for (ElemIdx g = 0; g < G.order(); ++g) ++orders[G.element_order(g)];
  EXPECT_EQ(orders, (std::map<unsigned, int>{{1, 1}, {2, 5}, {5, 4}}));
  // x -> ax + b with a in {1, 4}: the involutions are the reflections x -> b - x.
  for (ElemIdx g = 0; g < G.order(); ++g) {
    if (G.element_order(g) != 2) continue;
    const auto im = G.images(g);
    const unsigned b = im[0];
    for (unsigned x = 0; x < 5; ++x) EXPECT_EQ(im[x], (b + 5 - x) % 5);
  }
}

TEST(Grammar, CaseAndWhitespaceAreIgnored) {
  EXPECT_EQ(parse_spec(" s3 X c2 "), parse_spec("S3xC2"));
  EXPECT_EQ(parse_spec("FROB( 7 , 3 )"), parse_spec("frob(7,3)"));
  EXPECT_EQ(render(parse_spec("Wr2( a5 )")), "wr2(A5)");
  EXPECT_EQ(render(parse_spec("sl(2,3)xpsl(2,7)")), "SL(2,3)xPSL(2,7)");
}

TEST(Grammar, RoundTripOnGeneratedSpecs) {
  std::mt19937_64 rng(2718);
  for (int t = 0; t < 100; ++t) {
    const std::string text = random_spec(rng);
    const GroupSpec s = parse_spec(text);
    EXPECT_EQ(render(s), text);
    EXPECT_EQ(parse_spec(render(s)), s) << text;
    EXPECT_EQ(parse_spec(scramble(rng, text)), s) << text;
    std::size_t degree = 0;
    for (const auto& f : s.factors) degree += predicted_degree(GroupSpec{{f}});
    EXPECT_EQ(predicted_degree(s), degree) << text;
  }
}

TEST(Grammar, ErrorsCarryPositions) {
  EXPECT_EQ(error_position("S4x"), 3u);
  EXPECT_EQ(error_position("S4y3"), 2u);
  EXPECT_EQ(error_position("frob(7,3"), 8u);
  EXPECT_EQ(error_position(""), 0u);
  EXPECT_THROW(parse_spec("zz5"), SpecError);
  EXPECT_THROW(parse_spec("frob(7)"), SpecError);
  EXPECT_THROW(parse_spec("C99999999999"), SpecError);
}

TEST(Grammar, ArgumentValidation) {
  for (auto bad : {"frob(5,3)", "frob(9,2)", "Q12", "Q4", "D7", "D2", "heis(4)", "SL(3,3)", "SL(2,9)", "S0", "C0",
                   "A21"}) {
    EXPECT_THROW(predicted_order(parse_spec(bad)), SpecError) << bad;
  }
}

TEST(Grammar, OrderCapIsAResourceError) {
  EXPECT_THROW(build("S8", 1000), ResourceError);
  EXPECT_THROW(build("wr2(A5)", 5000), ResourceError);
}

TEST(Constructors, OrdersMatchClosedForms) {
  const std::vector<std::pair<std::string, std::uint64_t>> cases{
      {"C1", 1},         {"C12", 12},        {"D4", 4},         {"D8", 8},          {"D10", 10},
      {"D16", 16},       {"Q8", 8},          {"Q16", 16},       {"Q32", 32},        {"S1", 1},
      {"S5", 120},       {"A1", 1},          {"A2", 1},         {"A4", 12},         {"A6", 360},
      {"frob(3,2)", 6},  {"frob(7,3)", 21},  {"frob(13,3)", 39}, {"frob(11,5)", 55}, {"heis(2)", 8},
      {"heis(3)", 27},   {"heis(5)", 125},   {"SL(2,2)", 6},    {"SL(2,3)", 24},    {"SL(2,4)", 60},
      {"SL(2,5)", 120},  {"SL(2,7)", 336},   {"GL(2,2)", 6},    {"GL(2,3)", 48},    {"GL(2,4)", 180},
      {"GL(2,5)", 480},  {"PSL(2,2)", 6},    {"PSL(2,3)", 12},  {"PSL(2,4)", 60},   {"PSL(2,5)", 60},
      {"PSL(2,7)", 168}, {"wr2(C3)", 18},    {"wr2(S3)", 72},   {"S3xC2", 12},      {"A5xS3", 360}};
  for (const auto& [spec, order] : cases) {
    const GroupSpec s = parse_spec(spec);
    EXPECT_EQ(predicted_order(s), order) << spec;
    const PermGroup G = build(s);
    EXPECT_EQ(G.order(), order) << spec;
    EXPECT_EQ(G.degree(), predicted_degree(s)) << spec;
  }
}

TEST(Constructors, StructuralSanity) {
  EXPECT_TRUE(build("C12").is_abelian());
  EXPECT_FALSE(build("Q8").is_abelian());
  // Q8 has a single involution; D8 has five.
  auto involutions = [](const PermGroup& G) {
    int n = 0;
    for (ElemIdx g = 0; g < G.order(); ++g) n += G.element_order(g) == 2;
    return n;
  };
  EXPECT_EQ(involutions(build("Q8")), 1);
  EXPECT_EQ(involutions(build("Q16")), 1);
  EXPECT_EQ(involutions(build("D8")), 5);
  // heis(p) has exponent p for odd p.
  EXPECT_EQ(build("heis(3)").exponent(), 3u);
  EXPECT_EQ(build("heis(5)").exponent(), 5u);
  EXPECT_EQ(center(build("heis(3)")).order(), 3u);
  // SL(2,q) has a center of order gcd(2, q-1).
  EXPECT_EQ(center(build("SL(2,5)")).order(), 2u);
  EXPECT_EQ(center(build("SL(2,4)")).order(), 1u);
}

TEST(Tags, Examples) {
  auto tags = [](const std::string& spec) { return group_tags(build(spec), spec); };
  EXPECT_EQ(tags("C5"), (std::vector<std::string>{"abelian", "p-group", "nilpotent", "solvable", "simple"}));
  EXPECT_EQ(tags("A5"), (std::vector<std::string>{"simple"}));
  EXPECT_EQ(tags("S4"), (std::vector<std::string>{"solvable"}));
  EXPECT_EQ(tags("frob(7,3)xfrob(7,3)"), (std::vector<std::string>{"solvable", "frobenius-power"}));
  EXPECT_EQ(tags("D8"), (std::vector<std::string>{"p-group", "nilpotent", "solvable"}));
}

TEST(Corpus, ContainsTheRequiredEntries) {
  std::set<std::string> have, gated;
  for (const auto& e : corpus_entries()) (e.gated ? gated : have).insert(render(parse_spec(e.spec)));
  for (int n = 1; n <= 32; ++n) EXPECT_TRUE(have.count("C" + std::to_string(n)));
  for (auto s : {"D8", "D16", "Q8", "Q16", "heis(3)", "S3", "S4", "S5", "A4", "A5", "SL(2,3)", "GL(2,3)", "PSL(2,7)",
                 "frob(3,2)", "frob(5,2)", "frob(7,3)", "frob(13,3)", "frob(3,2)xfrob(3,2)",
                 "frob(3,2)xfrob(3,2)xfrob(3,2)", "frob(3,2)xfrob(3,2)xfrob(3,2)xfrob(3,2)", "frob(7,3)xfrob(7,3)",
                 "S4xC2", "A5xC2", "A5xS3"}) {
    EXPECT_TRUE(have.count(s)) << s;
  }
  for (auto s : {"S6", "A6", "SL(2,5)", "wr2(A5)"}) EXPECT_TRUE(gated.count(s)) << s;
}

TEST(Corpus, EntriesBuildWithPredictedOrders) {
  for (const auto& e : corpus_entries()) {
    if (e.gated) continue;
    EXPECT_EQ(build(e.spec).order(), predicted_order(parse_spec(e.spec))) << e.spec;
  }
}

TEST(Filter, Parsing) {
  const auto f = CorpusFilter::parse("order<=60, tag=solvable && degree>3");
  EXPECT_TRUE(f.needs_tags());
  EXPECT_EQ(f.pre_match("S5", 120, 5), false);
  EXPECT_EQ(f.pre_match("S4", 24, 4), std::nullopt);
  EXPECT_TRUE(f.matches("S4", 24, 4, {"solvable"}));
  EXPECT_FALSE(f.matches("A5", 60, 5, {"simple"}));
  EXPECT_EQ(CorpusFilter::parse("").pre_match("A5", 60, 5), true);
  EXPECT_EQ(CorpusFilter::parse("spec=sl(2,3)").pre_match("SL(2,3)", 24, 8), true);
  EXPECT_EQ(CorpusFilter::parse("spec!=S4").pre_match("S4", 24, 4), false);
  EXPECT_EQ(CorpusFilter::parse("order==24").pre_match("S4", 24, 4), true);
  EXPECT_THROW(CorpusFilter::parse("size<3"), SpecError);
  EXPECT_THROW(CorpusFilter::parse("order~3"), SpecError);
  EXPECT_THROW(CorpusFilter::parse("order<x"), SpecError);
  EXPECT_THROW(CorpusFilter::parse("tag<simple"), SpecError);
}

TEST(Runner, EmptyMatchGivesAnEmptyPassingRun) {
  CorpusOptions o;
  o.filter = "order>1000000";
  const auto r = run_corpus(o);
  EXPECT_EQ(r.entries, 0u);
  EXPECT_TRUE(r.reports.empty());
  EXPECT_TRUE(r.ok());
}

TEST(Runner, SmallGroupsPassTheoremA) {
  CorpusOptions o;
  o.filter = "order<=60";
  o.theorems = {"A"};
  const auto r = run_corpus(o);
  EXPECT_GT(r.entries, 40u);
  EXPECT_EQ(r.reports.size(), r.entries * o.primes.size());
  EXPECT_EQ(r.pass, r.reports.size());
  for (const auto& rep : r.reports) EXPECT_LE(rep.order, 60u);
}

TEST(Runner, OrderIsIndependentOfWorkerCount) {
  CorpusOptions o;
  o.filter = "order<=48";
  o.primes = {2, 3};
  std::vector<std::string> seen;
  o.jobs = 1;
  const auto serial = run_corpus(o, [&](const auto& reps) { seen.push_back(reps.front().spec); });
  o.jobs = 3;
  std::vector<std::string> seen_parallel;
  const auto parallel = run_corpus(o, [&](const auto& reps) { seen_parallel.push_back(reps.front().spec); });
  EXPECT_EQ(serial.to_json(false).dump(), parallel.to_json(false).dump());
  EXPECT_EQ(seen, seen_parallel);
}

TEST(Runner, ResourceErrorsAreRecordedNotFatal) {
  CorpusOptions o;
  o.filter = "spec=S5";
  o.element_cap = 50;
  o.theorems = {"A", "codegree"};
  const auto r = run_corpus(o);
  EXPECT_EQ(r.entries, 1u);
  EXPECT_EQ(r.error, r.reports.size());
  EXPECT_EQ(r.reports.size(), o.primes.size() + 1);
  EXPECT_TRUE(r.ok());
}

TEST(Runner, RejectsUnknownTheoremsAndComposites) {
  CorpusOptions o;
  o.theorems = {"Z"};
  EXPECT_THROW(run_corpus(o), PreconditionError);
  o.theorems = {};
  o.primes = {4};
  EXPECT_THROW(run_corpus(o), PreconditionError);
}

TEST(Runner, TagFilterSelectsAfterBuilding) {
  CorpusOptions o;
  o.filter = "tag=simple,tag!=abelian";
  o.theorems = {"corB"};
  o.primes = {2};
  const auto r = run_corpus(o);
  std::vector<std::string> specs;
  for (const auto& rep : r.reports) specs.push_back(rep.spec);
  EXPECT_EQ(specs, (std::vector<std::string>{"A5", "PSL(2,7)"}));
}
