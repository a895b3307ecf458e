#include <doctest.h>

#include <functional>
#include <random>

#include <selfsim/specdsl.hpp>

#include "test_util.hpp"

using namespace selfsim;
using namespace testutil;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::SyntaxError;
}

}  // namespace

TEST_CASE("parse the Cantor spec") {
  DigitSystemSpec spec = parse_spec("base 3\ndim 1\nallow (0)\nallow (2)");
  CHECK(spec.k == 3);
  CHECK(spec.d == 1);
  REQUIRE(spec.declarations.size() == 2);
  CHECK(spec.declarations[0].kind == SpecItem::Kind::Allow);
  CHECK(spec.declarations[0].digits == std::vector<int>{0});
  CHECK(spec.declarations[1].digits == std::vector<int>{2});
}

TEST_CASE("digit out of range reports its position") {
  try {
    parse_spec("base 3\ndim 1\nallow (3)");
    FAIL("expected DigitRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DigitRange);
    REQUIRE(e.pos().has_value());
    CHECK(e.pos()->line == 3);
    CHECK(e.pos()->col == 8);
  }
}

TEST_CASE("explicit two-dimensional spec") {
  DigitSystemSpec spec = parse_spec("base 3\ndim 2\nstate A initial\nedge A -(1,1)-> A");
  CHECK(spec.d == 2);
  SetAutomaton a = validate(spec);
  CHECK(a.state_count() == 1);
  CHECK(enumerate_words(a, 1) == std::set<std::vector<int>>{{1, 1}});
}

TEST_CASE("validate builds the Cantor automaton") {
  SetAutomaton a = validate(parse_spec("base 3\ndim 1\nallow (0)\nallow (2)"));
  CHECK(a.state_count() == 1);
  CHECK(enumerate_words(a, 1) == std::set<std::vector<int>>{{0}, {2}});
}

TEST_CASE("a declared dead state is an error, not a repair") {
  try {
    validate(parse_spec("base 3\ndim 1\nstate A initial\nstate B\nedge A -(0)-> A\nedge A -(2)-> B"));
    FAIL("expected DeadState");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DeadState);
    CHECK(std::string(e.what()).find("'B'") != std::string::npos);
  }
}

TEST_CASE("all states dead reports the empty set") {
  CHECK(code_of([] {
          validate(parse_spec("base 3\ndim 1\nstate A initial"));
        }) == ErrorCode::EmptySet);
}

TEST_CASE("the Vicsek spec validates to one state with five loops") {
  SetAutomaton a = validate(parse_spec(
      "base 3\ndim 2\nallow (1,1)\nallow (0,1)\nallow (2,1)\nallow (1,0)\nallow (1,2)"));
  CHECK(a.state_count() == 1);
  CHECK(enumerate_words(a, 1).size() == 5);
  // 5^2 depth-2 words before saturation
  CHECK(enumerate_words(a, 2).size() == 25);
}

TEST_CASE("static error taxonomy") {
  CHECK(code_of([] { parse_spec("base 3\ndim 2\nallow (1)"); }) == ErrorCode::ArityMismatch);
  CHECK(code_of([] { parse_spec("base 3\ndim 1\nstate A initial\nstate A"); }) ==
        ErrorCode::DuplicateState);
  CHECK(code_of([] { parse_spec("base 3\ndim 1\nstate A\nedge A -(0)-> A"); }) ==
        ErrorCode::NoInitial);
  CHECK(code_of([] { parse_spec("base 3\ndim 1\nstate A initial\nedge A -(0)-> B"); }) ==
        ErrorCode::UnknownState);
  CHECK(code_of([] { parse_spec("base 3\ndim 1\nallow (0)\nstate A initial"); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_spec("base 3\ndim 1\nstate A initial\nstate B initial"); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_spec("base 3\ndim 1\nallow - (0)"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_spec("base 1\ndim 1\nallow (0)"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_spec("dim 1\nbase 3"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_spec("base 3\ndim 1\n$"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("comments and odd whitespace are accepted") {
  DigitSystemSpec spec = parse_spec("# cantor\nbase   3 # trailing\n\tdim 1\nallow(0)#x\nallow ( 2 )");
  CHECK(spec.declarations.size() == 2);
}

TEST_CASE("print/parse round-trips canonical output") {
  std::vector<std::string> sources = {
      "base 3\ndim 1\nallow (0)\nallow (2)\n",
      "base 4\ndim 1\nstate a initial\nstate b\nedge a -(0)-> a\nedge a -(3)-> b\nedge b -(1)-> b\nedge b -(2)-> a\n",
      "base 3\ndim 2\nallow (1,1)\nallow (0,1)\n",
  };
  for (const std::string& src : sources) {
    DigitSystemSpec spec = parse_spec(src);
    std::string printed = print_spec(spec);
    DigitSystemSpec reparsed = parse_spec(printed);
    CHECK(print_spec(reparsed) == printed);
  }
}

TEST_CASE("fuzzed inputs never crash and always carry positions") {
  std::mt19937 rng(987654321);
  const std::string charset = "abexyz()->,0123456789 \n\t#basedimstatinllow-";
  std::vector<std::string> tokens = {"base",           "dim",
                                     "state",          "edge",
                                     "allow",          "initial",
                                     "-(",             ")->",
                                     "(",              ")",
                                     ",",              "0",
                                     "1",              "2",
                                     "3",              "9",
                                     "A",              "B",
                                     "# hi",           "base 3\ndim 1",
                                     "allow (0)",      "allow (2)",
                                     "state A initial", "edge A -(0)-> A"};
  int parsed_ok = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::string input;
    switch (iter % 4) {
      case 0:
      case 1: {  // raw character noise
        size_t len = rng() % 256;
        for (size_t i = 0; i < len; ++i) input.push_back(charset[rng() % charset.size()]);
        break;
      }
      case 2: {  // token shuffles, mostly ill-formed but deep
        if (rng() % 2 == 0) input = "base 3\ndim 1\n";
        while (input.size() < 64 + rng() % 192) {
          input += tokens[rng() % tokens.size()];
          input += (rng() % 4 == 0) ? " " : "\n";
        }
        break;
      }
      default: {  // grammatical by construction, random digits
        input = "base 3\ndim 1\n";
        size_t items = 1 + rng() % 6;
        for (size_t i = 0; i < items && input.size() < 256; ++i)
          input += "allow (" + std::to_string(rng() % 3) + ")\n";
        break;
      }
    }
    try {
      DigitSystemSpec spec = parse_spec(input);
      ++parsed_ok;
      try {
        validate(spec);
      } catch (const Error&) {
      }
    } catch (const Error& e) {
      if (e.pos().has_value()) {
        CHECK(e.pos()->line >= 1);
        CHECK(e.pos()->col >= 1);
      }
    }
    // anything else escaping (std::bad_alloc, segfault) fails the test run
  }
  CHECK(parsed_ok > 0);  // the token-based generator does produce valid specs
}
