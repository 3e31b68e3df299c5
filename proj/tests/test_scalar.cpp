#include <catch2/catch_amalgamated.hpp>

#include "mtype/scalar.hpp"

using namespace mtype;

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational(1, 18));
  CHECK(Rational(2, 4) == Rational(1, 2));
}

TEST_CASE("exact scalars stay exact under + - * /") {
  Scalar a(Rational(2, 3)), b(Rational(1, 3));
  CHECK((a + b).is_rational());
  CHECK((a + b).rational() == 1);
  CHECK((a - b).rational() == Rational(1, 3));
  CHECK((a * b).rational() == Rational(2, 9));
  CHECK((a / b).rational() == 2);
}

TEST_CASE("a real operand infects the result") {
  Scalar a(Rational(1, 2)), b(Real("0.5"));
  CHECK_FALSE((a + b).is_rational());
  CHECK((a + b).real() == Real(1));
  CHECK_THROWS_AS((a + b).rational(), Error);
}

TEST_CASE("division by zero is rejected") {
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
}

TEST_CASE("comparisons agree with rational order") {
  CHECK(Scalar(Rational(1, 3)) < Scalar(Rational(1, 2)));
  CHECK(Scalar(Rational(2, 6)) == Scalar(Rational(1, 3)));
  CHECK(Scalar(Rational(-1, 2)).sign() == -1);
  CHECK(Scalar(0).sign() == 0);
}

TEST_CASE("approx_eq is exact in rational mode, tolerant in real mode") {
  CHECK(approx_eq(Scalar(Rational(1, 3)), Scalar(Rational(1, 3))));
  CHECK_FALSE(approx_eq(Scalar(Rational(1, 3)), Scalar(Rational(1, 3) + Rational(1, Integer("1000000000000000000")))));
  CHECK(approx_eq(Scalar(Real("1.0")), Scalar(Real("1.0") + Real("1e-15"))));
  CHECK_FALSE(approx_eq(Scalar(Real("1.0")), Scalar(Real("1.001"))));
}

TEST_CASE("pow_int is exact and handles exponent 0") {
  CHECK(pow_int(Scalar(Rational(2, 3)), 3).rational() == Rational(8, 27));
  CHECK(pow_int(Scalar(Rational(7, 2)), 0).rational() == 1);
  CHECK(pow_int(Rational(3), 4) == 81);
}

TEST_CASE("root returns real values with small relative error") {
  Scalar r = root(Scalar(2), 2);
  CHECK_FALSE(r.is_rational());
  Real err = r.real() * r.real() - Real(2);
  if (err < 0) err = -err;
  CHECK(err < Real("1e-40"));
  CHECK_THROWS_AS(root(Scalar(-1), 2), OutOfRange);
  CHECK_THROWS_AS(root(Scalar(4), 0), InvalidExponent);
}

TEST_CASE("pow_real handles integral and fractional exponents") {
  CHECK(pow_real(Scalar(Rational(1, 2)), 2.0).is_rational());
  CHECK(pow_real(Scalar(4), 0.5).real() == Real(2));
  CHECK_THROWS_AS(pow_real(Scalar(-2), 0.5), OutOfRange);
  CHECK_THROWS_AS(pow_real(Scalar(0), -1.5), InvalidExponent);
}

TEST_CASE("to_string and parse_rational round-trip") {
  CHECK(to_string(Rational(-3, 7)) == "-3/7");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(parse_rational("22/7") == Rational(22, 7));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational(to_string(Rational(123456789, 987654321))) ==
        Rational(123456789, 987654321));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("from_double rejects non-finite input") {
  CHECK(Scalar::from_double(0.25).rational() == Rational(1, 4));
  CHECK_THROWS_AS(Scalar::from_double(std::numeric_limits<double>::infinity()),
                  OutOfRange);
}
