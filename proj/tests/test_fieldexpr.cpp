#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "lieflow/fieldexpr.hpp"

using namespace lieflow;

namespace {

double eval(const std::string& src, double t = 0.0, const Vec3& x = {0, 0, 0},
            const std::map<std::string, double>& params = {}) {
  std::vector<std::string> names;
  for (const auto& [k, _] : params) names.push_back(k);
  return parse_or_throw(src, names).evaluate(t, x, params);
}

struct Triple {
  const char* src;
  double t;
  Vec3 x;
  double expected;
};

}  // namespace

TEST_CASE("evaluator agrees with hand-computed table") {
  const Triple table[] = {
      {"1+2*3", 0, {0, 0, 0}, 7.0},
      {"2^3^2", 0, {0, 0, 0}, 512.0},          // right-associative power
      {"-2^2", 0, {0, 0, 0}, -4.0},            // power binds tighter than unary minus
      {"2^-2", 0, {0, 0, 0}, 0.25},
      {"x1*(2+x2)", 0, {1.5, -0.5, 0}, 2.25},
      {"sin(t)^2+cos(t)^2", 0.7, {0, 0, 0}, 1.0},
      {"sqrt(x1^2+x2^2)", 0, {3, 4, 0}, 5.0},
      {"log(exp(1))", 0, {0, 0, 0}, 1.0},
      {"abs(-t)", 2.5, {0, 0, 0}, 2.5},
      {"1/8", 0, {0, 0, 0}, 0.125},
      {"3.5", 0, {0, 0, 0}, 3.5},
      {"1e3 + 2.5e-2", 0, {0, 0, 0}, 1000.025},
      {"(x1+x2)*(x1-x2)", 0, {2, 1, 0}, 3.0},
      {"x3/x2/x1", 0, {2, 4, 16}, 2.0},        // left-associative division
      {"1-2-3", 0, {0, 0, 0}, -4.0},
      {"-x1^2 + t", 1, {3, 0, 0}, -8.0},
      {"cos(3.141592653589793)", 0, {0, 0, 0}, -1.0},
      {"2*sin(x2)*cos(x2)", 0, {0, 0.4, 0}, 0.7173560908995228},  // sin(0.8)
      {"  ( x1 + 1 ) * 2  ", 0, {0.5, 0, 0}, 3.0},
      {"t*t*t", -2, {0, 0, 0}, -8.0},
  };
  for (const Triple& c : table) {
    CAPTURE(c.src);
    CHECK(eval(c.src, c.t, c.x) == doctest::Approx(c.expected).epsilon(1e-12));
  }
}

TEST_CASE("named parameters substitute and unbound parameters throw") {
  CHECK(eval("gam*x2", 0, {0, 1, 0}, {{"gam", 2.0}}) == doctest::Approx(2.0));
  CHECK(eval("exp(-3*a*t)", std::log(2.0), {0, 0, 0}, {{"a", 1.0}}) ==
        doctest::Approx(0.12500000000000003).epsilon(1e-12));
  // parameter declared for the parser but missing at evaluation time
  std::vector<std::string> names = {"a"};
  const Expr e = parse_or_throw("a+1", names);
  CHECK_THROWS_AS(e.evaluate(0, {0, 0, 0}, {}), ExprError);
}

TEST_CASE("domain violations raise positioned errors instead of NaN") {
  CHECK_THROWS_AS(eval("log(x1)", 0, {-1, 0, 0}), ExprError);
  CHECK_THROWS_AS(eval("sqrt(0-2)"), ExprError);
  CHECK_THROWS_AS(eval("1/0"), ExprError);
  CHECK_THROWS_AS(eval("0^-1"), ExprError);
  CHECK_THROWS_AS(eval("log(0-x1)", 0, {1, 0, 0}), ExprError);
  try {
    eval("2*log(0)");
  } catch (const ExprError& e) {
    CHECK(e.position() == 2);  // offset of "log"
  }
}

TEST_CASE("parse errors carry the offending offset") {
  const ParseResult r = parse("x1*(2+");
  REQUIRE_FALSE(parse_ok(r));
  CHECK(parse_error(r).position == 6);
  CHECK(parse_error(r).expected.find("number") != std::string::npos);

  const ParseResult unknown = parse("x1 + bogus");
  REQUIRE_FALSE(parse_ok(unknown));
  CHECK(parse_error(unknown).position == 5);
  CHECK(parse_error(unknown).message.find("bogus") != std::string::npos);

  const ParseResult unbalanced = parse("(1+2");
  REQUIRE_FALSE(parse_ok(unbalanced));
  CHECK(parse_error(unbalanced).position == 4);

  const ParseResult garbage = parse("1+2 x1");
  REQUIRE_FALSE(parse_ok(garbage));
  CHECK(parse_error(garbage).position == 4);

  CHECK_FALSE(parse_ok(parse("")));
  CHECK_FALSE(parse_ok(parse("sin 1")));
  CHECK_FALSE(parse_ok(parse("1..2")));
}

namespace {

// Golden corpus: source, expected minimal-parenthesis rendering, value at
// t=0.3, x=(1.2, -0.7, 2.0) with no parameters.
struct Golden {
  const char* src;
  const char* printed;
  double value;
};

constexpr double kT = 0.3;
constexpr Vec3 kX{1.2, -0.7, 2.0};

const Golden kCorpus[] = {
    {"1+2*3", "1+2*3", 7.0},
    {"(1+2)*3", "(1+2)*3", 9.0},
    {"2^3^2", "2^3^2", 512.0},
    {"(2^3)^2", "(2^3)^2", 64.0},
    {"-2^2", "-2^2", -4.0},
    {"(-2)^2", "(-2)^2", 4.0},
    {"2^-2", "2^-2", 0.25},
    {"1-2-3", "1-2-3", -4.0},
    {"1-(2-3)", "1-(2-3)", 2.0},
    {"x3/x2/x1", "x3/x2/x1", 2.0 / (-0.7) / 1.2},
    {"x3/(x2/x1)", "x3/(x2/x1)", 2.0 / (-0.7 / 1.2)},
    {"x1*(2+x2)", "x1*(2+x2)", 1.2 * (2.0 - 0.7)},
    {"x1*2+x2", "x1*2+x2", 1.2 * 2.0 - 0.7},
    {"-(x1+1)", "-(x1+1)", -2.2},
    {"-x1+1", "-x1+1", -0.2},
    {"2*(3*4)", "2*(3*4)", 24.0},
    {"2*3*4", "2*3*4", 24.0},
    {"abs(-t)", "abs(-t)", 0.3},
    {"sin(t)", "sin(t)", std::sin(0.3)},
    {"cos(x2)", "cos(x2)", std::cos(-0.7)},
    {"exp(x1)", "exp(x1)", std::exp(1.2)},
    {"log(x3)", "log(x3)", std::log(2.0)},
    {"sqrt(x3)", "sqrt(x3)", std::sqrt(2.0)},
    {"sin(t)^2+cos(t)^2", "sin(t)^2+cos(t)^2", 1.0},
    {"t", "t", 0.3},
    {"x1", "x1", 1.2},
    {"x2", "x2", -0.7},
    {"x3", "x3", 2.0},
    {"3.5", "3.5", 3.5},
    {"0.125", "0.125", 0.125},
    {"1e3", "1000", 1000.0},
    {"2.5e-2", "0.025", 0.025},
    {"1e3 + 2.5e-2", "1000+0.025", 1000.025},
    {"x1+x2+x3", "x1+x2+x3", 2.5},
    {"x1+(x2+x3)", "x1+(x2+x3)", 2.5},
    {"x1-x2*x3", "x1-x2*x3", 1.2 - (-0.7) * 2.0},
    {"(x1-x2)*x3", "(x1-x2)*x3", (1.2 + 0.7) * 2.0},
    {"2/x3", "2/x3", 1.0},
    {"-t", "-t", -0.3},
    {"--t", "--t", 0.3},
    {"-(-t)", "--t", 0.3},
    {"t^t", "t^t", std::pow(0.3, 0.3)},
    {"(t+1)^2", "(t+1)^2", 1.69},
    {"2^(t+1)", "2^(t+1)", std::pow(2.0, 1.3)},
    {"sin(cos(t))", "sin(cos(t))", std::sin(std::cos(0.3))},
    {"x1*x2/x3", "x1*x2/x3", 1.2 * (-0.7) / 2.0},
    {"x1/x2*x3", "x1/x2*x3", 1.2 / (-0.7) * 2.0},
    {"x1^2*x2", "x1^2*x2", 1.44 * (-0.7)},
    {"abs(x2)^3", "abs(x2)^3", std::pow(0.7, 3.0)},
    {"1 + 2 - 3 * 4 / 6", "1+2-3*4/6", 1.0},
};
static_assert(sizeof(kCorpus) / sizeof(kCorpus[0]) == 50);

}  // namespace

TEST_CASE("golden corpus: printing, reparse stability, values") {
  for (const Golden& g : kCorpus) {
    CAPTURE(g.src);
    const ParseResult r = parse(g.src);
    REQUIRE(parse_ok(r));
    const Expr e = parsed(r);
    const std::string printed = e.to_string();
    CHECK(printed == g.printed);
    const ParseResult back = parse(printed);
    REQUIRE(parse_ok(back));
    CHECK(e.same_structure(parsed(back)));
    CHECK(e.evaluate(kT, kX) == doctest::Approx(g.value).epsilon(1e-12));
  }
}

TEST_CASE("same_structure distinguishes association") {
  const Expr a = parse_or_throw("1-2-3");
  const Expr b = parse_or_throw("1-(2-3)");
  CHECK_FALSE(a.same_structure(b));
  CHECK(a.same_structure(parse_or_throw("1 - 2 - 3")));
}

TEST_CASE("fuzzed inputs never crash and always position their errors") {
  const std::string charset = "0123456789.+-*/^()abcdefghijklmnopqrstuvwxyz eE_";
  std::mt19937_64 rng(20260815);
  std::uniform_int_distribution<std::size_t> len_dist(0, 256);
  std::uniform_int_distribution<std::size_t> char_dist(0, charset.size() - 1);
  int parsed_count = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string src;
    const std::size_t n = len_dist(rng);
    src.reserve(n);
    for (std::size_t k = 0; k < n; ++k) src.push_back(charset[char_dist(rng)]);
    const ParseResult r = parse(src);
    if (!parse_ok(r)) {
      CHECK(parse_error(r).position <= src.size());
      continue;
    }
    ++parsed_count;
    try {
      const double v = parsed(r).evaluate(0.5, {0.25, -1.5, 2.0});
      CHECK(std::isfinite(v));
    } catch (const ExprError& e) {
      CHECK(e.position() <= src.size());
    }
  }
  CHECK(parsed_count > 0);  // the fuzzer must exercise the success path too
}
