#include "doctest.h"
#include "fockmult/checks.hpp"

using namespace fockmult;

TEST_CASE("C* identity on finite groups") {
  CheckOptions opts;
  opts.trials = 30;
  opts.tol = 1e-8;
  for (const MonoidSpec& spec : {MonoidSpec::cyclic(3), MonoidSpec::cyclic(6), MonoidSpec::symmetric_group_s3()}) {
    const CheckVerdict v = check_cstar(spec, opts);
    CHECK(v.pass);
    CHECK(v.trials == 30);
    CHECK(v.kernel_converged);
    CHECK(v.witness.is_null());
  }
  CHECK_THROWS_AS(check_cstar(MonoidSpec::non_negative_integers(), opts), Error);
  CHECK_THROWS_AS(check_cstar(MonoidSpec::integers(), opts), Error);
}

TEST_CASE("sharp and adjoint") {
  CheckOptions opts;
  opts.trials = 20;
  CHECK(check_sharp_adjoint(MonoidSpec::symmetric_group_s3(), opts).pass);
  CHECK(check_sharp_adjoint(MonoidSpec::cyclic(5), opts).pass);
  CHECK_THROWS_AS(check_sharp_adjoint(MonoidSpec::free_monoid(2), opts), Error);
}

TEST_CASE("U laws") {
  CheckOptions opts;
  opts.trials = 20;
  CHECK(check_u_laws(MonoidSpec::cyclic(5), opts).pass);
  opts.level = 6;
  const CheckVerdict z = check_u_laws(MonoidSpec::integers(), opts);
  CHECK(z.pass);
  CHECK(z.max_residual <= 1e-12);
  CHECK_THROWS_AS(check_u_laws(MonoidSpec::non_negative_integers(), opts), Error);
}

TEST_CASE("flip on free monoids") {
  CheckOptions opts;
  opts.trials = 10;
  opts.level = 3;
  CHECK(check_flip(MonoidSpec::free_monoid(2), opts).pass);
  CHECK(check_flip(MonoidSpec::free_monoid(3), opts).pass);
  CHECK_THROWS_AS(check_flip(MonoidSpec::cyclic(3), opts), Error);
}

TEST_CASE("intertwining with sampled and given symbols") {
  CheckOptions opts;
  opts.trials = 5;
  opts.level = 2;
  CHECK(check_intertwine(MonoidSpec::free_monoid(2), opts).pass);
  const auto spec = MonoidSpec::non_negative_vectors(2);
  Polynomial phi(window(spec, 1));
  phi.set(Element({1, 0}), 1.0);
  phi.set(Element({0, 1}), Complex(0, 1));
  CHECK(check_intertwine(spec, opts, phi).pass);
}

TEST_CASE("abelian collapse") {
  CheckOptions opts;
  opts.trials = 5;
  opts.level = 3;
  CHECK(check_abelian(MonoidSpec::non_negative_vectors(2), opts).pass);
  CHECK(check_abelian(MonoidSpec::integers(), opts).pass);
  opts.level = 0;
  CHECK(check_abelian(MonoidSpec::cyclic(4), opts).pass);

  const CheckVerdict s3 = check_abelian(MonoidSpec::symmetric_group_s3(), opts);
  CHECK_FALSE(s3.pass);
  // either a non-commuting pair or a symbol with L != R
  REQUIRE(s3.witness.is_object());
  CHECK((s3.witness.contains("a") || s3.witness.contains("symbol")));
  opts.level = 2;
  CHECK_FALSE(check_abelian(MonoidSpec::free_monoid(2), opts).pass);
}

TEST_CASE("verdict serialisation") {
  CheckOptions opts;
  opts.trials = 3;
  const Json j = check_sharp_adjoint(MonoidSpec::cyclic(3), opts).to_json();
  CHECK(j["pass"] == true);
  CHECK(j["trials"] == 3);
  CHECK(j["witness"].is_null());
}
