#include <cstdlib>

#include "doctest.h"
#include "support.hpp"
#include "wellround/parallel.hpp"

using namespace wellround;
using namespace testsupport;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* v) { setenv("WELLROUND_THREADS", v, 1); }
  ~ThreadsEnv() { unsetenv("WELLROUND_THREADS"); }
};

}  // namespace

TEST_CASE("worker cap from the environment") {
  {
    ThreadsEnv env("3");
    CHECK(worker_count() == 3);
  }
  {
    ThreadsEnv env("junk");
    CHECK(worker_count() >= 1);
  }
  {
    ThreadsEnv env("0");
    CHECK(worker_count() >= 1);
  }
}

TEST_CASE("parallel enumeration equals the serial one") {
  std::mt19937_64 rng(77);
  for (const char* threads : {"1", "2", "4"}) {
    ThreadsEnv env(threads);
    for (int t = 0; t < 40; ++t) {
      std::size_t n = 2 + t % 3;
      GramForm a = random_form(n, rng);
      Rational bound = a.matrix()(0, 0) * (1 + t % 3);
      CHECK(vectors_below_parallel(a, bound) == vectors_below(a, bound));
      CHECK(vectors_below_parallel(a, bound, EnumerationMode::Raw) ==
            vectors_below(a, bound, EnumerationMode::Raw));
    }
  }
  CHECK_THROWS_AS(vectors_below_parallel(GramForm::identity(2), 0), InvalidArgument);
}

TEST_CASE("batch retraction equals one-by-one retraction") {
  std::mt19937_64 rng(78);
  std::vector<GramForm> forms;
  for (int t = 0; t < 30; ++t) forms.push_back(random_form(2 + t % 3, rng));
  ThreadsEnv env("4");
  auto par = retract_batch(forms);
  auto ser = retract_batch_serial(forms);
  REQUIRE(par.size() == forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    CHECK(par[i].final_form == ser[i].final_form);
    CHECK(par[i].irredundant == ser[i].irredundant);
  }
}
