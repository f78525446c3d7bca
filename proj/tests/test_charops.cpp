#include <gtest/gtest.h>

#include <random>

#include "charkernel/charops.hpp"
#include "charkernel/structure.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace charkernel;
using charkernel::testkit::context;
using charkernel::testkit::subgroup_of;
using charkernel::testkit::table_of;

namespace {

const CharacterTable& s4() { return table_of("S4"); }

/// Rows of S4 in table order: 1, sign, degree 2, then the two degree-3 rows.
std::size_t s4_faithful_three(bool with_sign) {
  const auto& T = s4();
  const std::size_t t = T.group.class_of(charkernel::testkit::elem(T.group, "(1,2)"));
  return T[3][t] == Cyclotomic(with_sign ? -1 : 1) ? 3 : 4;
}

}  // namespace

TEST(InnerProduct, TrivialAndIrreducibleNorms) {
  const auto& T = s4();
  EXPECT_EQ(inner_product(T[0], T[0]), 1);
  for (const auto& spec : testkit::default_specs()) {
    const auto& U = table_of(spec);
    for (std::size_t i = 0; i < U.size(); ++i) {
      for (std::size_t j = 0; j < U.size(); ++j) EXPECT_EQ(inner_product(U[i], U[j]), i == j ? 1 : 0) << spec;
    }
  }
}

TEST(InnerProduct, SignRestrictedToS3) {
  const auto& T = s4();
  const Embedding E = embed(subgroup_of(T.group, {"(1,2)", "(1,2,3)"}));
  const ClassFunction s = restrict(T[1], E);
  // Direct sum over the six elements of S3.
  Rational direct = 0;
  for (ElemIdx h = 0; h < E.group.order(); ++h) {
    const auto v = s.at(h).as_rational();
    ASSERT_TRUE(v.has_value());
    direct += *v * *v;
  }
  direct /= 6;
  EXPECT_EQ(direct, 1);
  EXPECT_EQ(inner_product(s, s), 1);
}

TEST(Restrict, ToTheWholeGroupIsIdentity) {
  const auto& T = table_of("A5");
  const Embedding E = embed(T.group.whole());
  for (const auto& chi : T.irreducibles) {
    const auto r = restrict(chi, E);
    for (ElemIdx g = 0; g < T.group.order(); ++g) EXPECT_EQ(r.at(g), chi.at(g));
  }
}

TEST(Induce, TrivialGivesThePermutationCharacter) {
  const auto& T = table_of("S5");
  const Subgroup H = subgroup_of(T.group, {"(1,2)", "(1,2,3,4)"});
  const Embedding E = embed(H);
  const ClassFunction pi = induce(ClassFunction::trivial(E.group), E);
  EXPECT_EQ(inner_product(pi, T[0]), 1);
  for (const auto& c : T.group.classes()) {
    long fixed = 0;
    for (std::size_t i = 0; i < 5; ++i) fixed += T.group.images(c.representative)[i] == i;
    EXPECT_EQ(pi.at(c.representative), Cyclotomic(fixed));
  }
}

TEST(Induce, SignOfS3InducedToS4) {
  const auto& T = s4();
  const Embedding E = embed(subgroup_of(T.group, {"(1,2)", "(1,2,3)"}));
  const auto& TH = character_table(E.group);
  const ClassFunction theta = TH[1];  // sign of S3
  const ClassFunction ind = induce(theta, E);
  EXPECT_EQ(ind.degree(), 4);
  const std::size_t psi = s4_faithful_three(true);
  EXPECT_EQ(ind, T[1] + T[psi]);
  EXPECT_TRUE(kernel(T[psi]).is_trivial());
}

TEST(Induce, MatchesTheLiteralFormula) {
  std::mt19937_64 rng(3);
  for (const auto& spec : testkit::specs_up_to(120)) {
    const PermGroup& G = context(spec).group();
    std::uniform_int_distribution<ElemIdx> pick(0, static_cast<ElemIdx>(G.order() - 1));
    const ElemIdx x[] = {pick(rng)};
    const Embedding E = embed(generate_subgroup(G, x));
    const auto TH = character_table(E.group);
    for (const auto& theta : TH.irreducibles) {
      const auto expected =
          oracle::induced_values(E.subgroup, [&](ElemIdx h) { return theta.at(static_cast<ElemIdx>(E.local[h])); });
      EXPECT_EQ(induce(theta, E).values(), expected) << spec;
    }
  }
}

TEST(Induce, DegreeAndFrobeniusReciprocity) {
  std::mt19937_64 rng(5);
  for (const auto& spec : testkit::specs_up_to(200)) {
    const auto& T = table_of(spec);
    const PermGroup& G = T.group;
    std::uniform_int_distribution<ElemIdx> pick(0, static_cast<ElemIdx>(G.order() - 1));
    int triples = 0;
    for (int s = 0; s < 10 && triples < 50; ++s) {
      std::vector<ElemIdx> gens{pick(rng)};
      if (s % 2) gens.push_back(pick(rng));
      const Embedding E = embed(generate_subgroup(G, gens));
      const auto TH = character_table(E.group);
      for (const auto& theta : TH.irreducibles) {
        const ClassFunction up = induce(theta, E);
        EXPECT_EQ(up.degree(), Integer(static_cast<long>(E.index())) * theta.degree()) << spec;
        for (const auto& chi : T.irreducibles) {
          EXPECT_EQ(inner_product(up, chi), inner_product(theta, restrict(chi, E))) << spec;
          ++triples;
        }
      }
    }
  }
}

TEST(Product, Examples) {
  const auto& T = s4();
  EXPECT_EQ(product(T[3], T[0]), T[3]);
  EXPECT_EQ(product(T[1], T[1]), T[0]);
  const auto& S3 = table_of("S3");
  EXPECT_EQ(product(S3[2], S3[1]), S3[2]);
}

TEST(Product, KernelContainsIntersectionOfKernels) {
  for (const auto& spec : testkit::specs_up_to(200)) {
    const auto& T = table_of(spec);
    for (std::size_t i = 0; i < T.size(); ++i) {
      for (std::size_t j = i; j < T.size(); ++j) {
        const Subgroup both = kernel(T[i]).intersect(kernel(T[j]));
        EXPECT_TRUE(both.is_subset_of(kernel(product(T[i], T[j])))) << spec;
      }
    }
  }
}

TEST(Kernel, Examples) {
  const auto& T = s4();
  EXPECT_TRUE(kernel(T[0]).is_whole());
  EXPECT_EQ(kernel(T[1]).order(), 12u);
  const Subgroup V = kernel(T[2]);
  EXPECT_EQ(V.order(), 4u);
  EXPECT_TRUE(V.contains(charkernel::testkit::elem(T.group, "(1,2)(3,4)")));
  EXPECT_EQ(T.group.order() / V.order(), 6u);
}

TEST(Kernel, IsNormalAcrossTheCorpus) {
  for (const auto& spec : testkit::default_specs()) {
    const auto& T = table_of(spec);
    for (const auto& chi : T.irreducibles) EXPECT_TRUE(is_normal(kernel(chi))) << spec;
  }
}

TEST(Codegree, Examples) {
  for (unsigned n : {2u, 4u, 8u, 16u, 32u, 3u, 9u, 27u, 5u, 25u, 7u}) {
    const auto& T = table_of("C" + std::to_string(n));
    const auto faithful = testkit::rows_where(T, [&](std::size_t i) { return kernel(T[i]).is_trivial(); });
    ASSERT_FALSE(faithful.empty());
    EXPECT_EQ(codegree(T[faithful.front()]).value, n);
  }
  const auto& T = s4();
  EXPECT_EQ(codegree(T[0]).value, 1u);
  EXPECT_EQ(codegree(T[3]).value, 8u);
  EXPECT_EQ(codegree(T[4]).value, 8u);
  EXPECT_EQ(codegree(T[3]).p_part(2), 8u);
  EXPECT_EQ(codegree(T[3]).p_exponent(2), 3u);
  EXPECT_EQ(codegree(T[1]).value, 2u);
  EXPECT_EQ(codegree(T[2]).value, 3u);
}

TEST(Codegree, BoundsTheDegreeAcrossTheCorpus) {
  for (const auto& spec : testkit::default_specs()) {
    const auto& ctx = context(spec);
    const auto& T = ctx.table();
    for (std::size_t i = 0; i < T.size(); ++i) {
      const Codegree c = codegree(T[i]);
      EXPECT_EQ(c.value * T.degree(i) * ctx.kernel(i).order(), T.group.order()) << spec;
      EXPECT_LE(T.degree(i), c.value) << spec;
      std::uint64_t back = 1;
      for (auto [p, e] : c.factors) back *= ipow(p, e);
      EXPECT_EQ(back, c.value) << spec;
    }
  }
}

TEST(IrrPPrime, FiltersByDegree) {
  EXPECT_EQ(irr_p_prime(s4(), 2), (std::vector<std::size_t>{0, 1, 3, 4}));
  EXPECT_EQ(irr_p_prime(s4(), 3), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(irr_p_prime(s4(), 5).size(), 5u);
}

TEST(Decompose, RecoversMultiplicities) {
  const auto& T = s4();
  const ClassFunction sum = T[1] + T[3] + T[3];
  const auto m = decompose(sum, T);
  EXPECT_EQ(m, (std::vector<Rational>{0, 1, 0, 2, 0}));
}

TEST(Faithful, Examples) {
  EXPECT_FALSE(is_faithful(s4()[0]));
  const auto& A5 = table_of("A5");
  for (std::size_t i = 1; i < A5.size(); ++i) EXPECT_TRUE(is_faithful(A5[i]));
  const auto& ctx = context("S4");
  EXPECT_FALSE(is_faithful(s4()[2]));
  EXPECT_FALSE(socle_faithfulness(s4()[2], socle(ctx.lattice())));
}

TEST(Faithful, SocleCriterionAgreesAcrossTheCorpus) {
  for (const auto& spec : testkit::default_specs()) {
    const auto& ctx = context(spec);
    const Subgroup soc = socle(ctx.lattice());
    for (const auto& chi : ctx.table().irreducibles) EXPECT_EQ(is_faithful(chi), socle_faithfulness(chi, soc)) << spec;
  }
}
