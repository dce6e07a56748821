#include "bohr/dirichlet.hpp"
#include "bohr/errors.hpp"
#include "bohr/primes.hpp"
#include "bohr/series_json.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

using namespace bohr;

TEST_CASE("primes")
{
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(25) == 97);
  CHECK(prime_position(97) == 25);
  CHECK(nth_prime(100000) == 1299709);
  CHECK_THROWS_AS(prime_position(91), DomainError);
  CHECK(is_prime(2305843009213693951ULL));
  CHECK_FALSE(is_prime(3215031751ULL));
}

TEST_CASE("concurrent sieve growth")
{
  std::vector<std::uint64_t> got(4);
  std::vector<std::jthread> workers;
  for (int i = 0; i < 4; ++i)
    workers.emplace_back([&got, i] { got[i] = nth_prime(200000 + 1000 * i); });
  workers.clear();
  for (int i = 0; i < 4; ++i)
    CHECK(prime_position(got[i]) == 200000 + 1000 * static_cast<std::uint64_t>(i));
}

TEST_CASE("factorize and index_of")
{
  CHECK(factorize(1).is_zero());
  CHECK(factorize(12) == MultiIndex{{1, 2}, {2, 1}});
  CHECK(factorize(5) == MultiIndex{{3, 1}});
  CHECK(index_of(MultiIndex{}) == 1);
  CHECK(index_of(MultiIndex{{1, 2}, {2, 1}}) == 12);
  CHECK(index_of(MultiIndex{{25, 1}}) == 97);
  CHECK_THROWS_AS(factorize(0), DomainError);
  CHECK_THROWS_AS(factorize(std::uint64_t{1} << 63), OverflowError);
  CHECK_THROWS_AS(index_of(MultiIndex{{1, 63}}), OverflowError);
  CHECK(index_of(MultiIndex{{1, 62}}) == std::uint64_t{1} << 62);
  CHECK_THROWS_AS(factorize(9223372036854775783ULL), ResourceError);
  const std::uint64_t smooth = (std::uint64_t{1} << 40) * 59049 * 7;
  CHECK(factorize(smooth) == MultiIndex{{1, 40}, {2, 10}, {4, 1}});
  CHECK(index_of(factorize(smooth)) == smooth);

  for (std::uint64_t n = 1; n <= 20000; ++n)
    REQUIRE(index_of(factorize(n)) == n);
}

TEST_CASE("factorize is additive")
{
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> d(1, 1000000);
  for (int i = 0; i < 500; ++i) {
    const auto m = d(rng), n = d(rng);
    CHECK(factorize(m * n) == factorize(m) + factorize(n));
  }
}

TEST_CASE("multi-index validation and order")
{
  CHECK_THROWS_AS(MultiIndex({{2, 1}, {1, 1}}), DomainError);
  CHECK_THROWS_AS(MultiIndex({{1, 0}}), DomainError);
  CHECK_THROWS_AS(MultiIndex({{0, 1}}), DomainError);
  const MultiIndex a{{1, 2}, {3, 1}};
  CHECK(a.total_degree() == 3);
  CHECK(a.weighted_degree() == 5);
  CHECK(a[2] == 0);
  CHECK(MultiIndex{{1, 1}} < MultiIndex{{1, 2}});
  CHECK(MultiIndex{{1, 5}} < MultiIndex{{2, 1}});
  CHECK(difference(MultiIndex{{1, 1}}, MultiIndex{{2, 1}}) == SignedMultiIndex{{1, 1}, {2, -1}});
}

TEST_CASE("lift and unlift")
{
  const DirichletSeries q{{1, 1.0}, {2, -2.0}, {6, 3.0}};
  const LiftedPolynomial expected{{MultiIndex{}, 1.0}, {MultiIndex{{1, 1}}, -2.0}, {MultiIndex{{1, 1}, {2, 1}}, 3.0}};
  CHECK(lift(q) == expected);
  CHECK(lift(DirichletSeries{}).is_zero());
  CHECK(lift(DirichletSeries{{9, 7.0}}) == LiftedPolynomial{{MultiIndex{{2, 2}}, 7.0}});
  CHECK(unlift(LiftedPolynomial{{MultiIndex{{1, 1}, {2, 1}}, 1.0}}) == DirichletSeries{{6, 1.0}});
  CHECK(unlift(LiftedPolynomial{}).empty());
  CHECK(unlift(LiftedPolynomial{{MultiIndex{{3, 1}}, 2.0}}) == DirichletSeries{{5, 2.0}});
  CHECK(DirichletSeries{{4, 0.0}}.empty());
  CHECK_THROWS_AS(DirichletSeries({{0, 0.0}}), DomainError);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto f = testing::random_series(rng, 20, 1000000);
    CHECK(unlift(lift(f)) == f);
    CHECK(lift(unlift(lift(f))) == lift(f));
  }
}

TEST_CASE("abschnitt")
{
  const LiftedPolynomial f = lift(DirichletSeries{{1, 1.0}, {2, -2.0}, {6, 3.0}});
  CHECK(abschnitt(f, 1) == lift(DirichletSeries{{1, 1.0}, {2, -2.0}}));
  CHECK(abschnitt(f, 0) == LiftedPolynomial::constant(1.0));
  CHECK(abschnitt(f, 5) == f);
  CHECK(abschnitt(abschnitt(f, 1), 1) == abschnitt(f, 1));
  CHECK(abschnitt(DirichletSeries{{2, 1.0}, {5, 1.0}}, 2) == DirichletSeries{{2, 1.0}});
}

TEST_CASE("vertical shift")
{
  CHECK(vertical_shift(DirichletSeries{{2, 1.0}}, 1.0).coefficient(2) == Complex(0.5));
  const DirichletSeries f{{2, 1.0}, {3, Complex(0, 2)}};
  CHECK(vertical_shift(f, 0.0) == f);
  const auto s = vertical_shift(DirichletSeries{{6, 3.0}}, std::log(2.0) / std::log(6.0));
  CHECK(std::abs(s.coefficient(6) - 1.5) < 1e-15);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto g = testing::random_series(rng, 10, 10000);
    const auto a = vertical_shift(vertical_shift(g, 0.3), 0.45);
    const auto b = vertical_shift(g, 0.75);
    for (const auto& [n, c] : b.terms())
      CHECK(std::abs(a.coefficient(n) - c) <= 1e-14 * std::abs(c));
  }
}

TEST_CASE("evaluation")
{
  CHECK(evaluate_lift(lift(DirichletSeries{{1, 1.0}, {2, -2.0}}), PolydiskPoint({0.0})) == Complex(1.0));
  const Complex v = evaluate_lift(lift(DirichletSeries{{6, 1.0}}), PolydiskPoint({0.5, 1.0 / 3.0}));
  CHECK(std::abs(v - 1.0 / 6.0) < 1e-16);
  CHECK_THROWS_AS(PolydiskPoint({1.0}), DomainError);
  CHECK(evaluate_line(DirichletSeries{{1, 1.0}}, 0.7, 3.0) == Complex(1.0));
  CHECK(std::abs(std::abs(evaluate_line(DirichletSeries{{2, 1.0}}, 0.0, 1.7)) - 1.0) < 1e-15);
  CHECK(evaluate_line(DirichletSeries{{1, 1.0}, {2, 1.0}}, 0.0, 0.0) == Complex(2.0));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> sig(0.05, 2.0), tt(-100.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    const auto q = testing::random_series(rng, 15, 10000);
    const double sigma = sig(rng), t = tt(rng);
    const auto k = lift(q).max_variable();
    const Complex line = evaluate_line(q, sigma, t);
    const Complex via = evaluate_lift(lift(q), prime_point(k, sigma, t));
    double scale = 0.0;
    for (const auto& [n, a] : q.terms())
      scale += std::abs(a) * std::pow(static_cast<double>(n), -sigma);
    CHECK(std::abs(line - via) <= 1e-12 * scale);
  }
}

TEST_CASE("dirichlet convolution")
{
  CHECK(multiply(DirichletSeries{{2, 1.0}}, DirichletSeries{{3, 1.0}}) == DirichletSeries{{6, 1.0}});
  const DirichletSeries f{{2, 1.0}, {7, Complex(1, 1)}};
  CHECK(multiply(f, DirichletSeries{{1, 1.0}}) == f);
  const DirichletSeries g{{1, 1.0}, {2, 1.0}};
  CHECK(multiply(g, g) == DirichletSeries{{1, 1.0}, {2, 2.0}, {4, 1.0}});
  CHECK_THROWS_AS(multiply(DirichletSeries{{std::uint64_t{1} << 40, 1.0}}, DirichletSeries{{std::uint64_t{1} << 30, 1.0}}),
                  OverflowError);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_series(rng, 20, 1000000);
    const auto b = testing::random_series(rng, 20, 1000000);
    CHECK(lift(multiply(a, b)) == lift(a) * lift(b));
  }
}

TEST_CASE("json formats")
{
  const DirichletSeries q{{1, 1.0}, {2, -2.0}, {6, Complex(3.0, 0.25)}};
  CHECK(series_from_json(to_json(q)) == q);
  CHECK(polynomial_from_json(to_json(lift(q))) == lift(q));
  const auto text = R"({"terms":[{"n":6,"re":3.0,"im":0.0},{"n":6,"re":1.0,"im":0.0}]})";
  CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(text)), DomainError);
  CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(R"({"terms":[{"n":0,"re":1}]})")), DomainError);
  CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(R"({"terms":[{"n":9223372036854775808,"re":1}]})")),
                  OverflowError);
  const SignedMultiIndex s{{1, 1}, {2, -1}};
  CHECK(signed_index_from_json(to_json(s)) == s);
}
