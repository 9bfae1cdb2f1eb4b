"""
Test scalar helpers.

"""
from fractions import Fraction

from hamcrest import (
    assert_that,
    calling,
    close_to,
    equal_to,
    instance_of,
    is_,
    raises,
)

from spinlab.scalars import (
    as_exact,
    as_scalar,
    decode_number,
    encode_number,
    format_number,
    inverse_sqrt,
    is_exact,
)


def test_as_scalar():
    assert_that(as_scalar(3), is_(instance_of(Fraction)))
    assert_that(as_scalar(0.25), is_(instance_of(float)))
    assert_that(calling(as_scalar).with_args(True), raises(TypeError))


def test_as_exact_snaps_to_integers():
    assert_that(as_exact(4.0), is_(equal_to(Fraction(4))))
    assert_that(as_exact(4.000000001, 1e-8), is_(equal_to(Fraction(4))))
    assert_that(as_exact(-0.0), is_(equal_to(Fraction(0))))
    assert_that(is_exact(as_exact(0.5)), is_(equal_to(False)))


def test_inverse_sqrt():
    assert_that(inverse_sqrt(Fraction(4)), is_(equal_to(Fraction(1, 2))))
    assert_that(inverse_sqrt(Fraction(9, 4)), is_(equal_to(Fraction(2, 3))))
    assert_that(inverse_sqrt(Fraction(2)), is_(close_to(0.7071067811865476, 1e-15)))


def test_decode_number():
    assert_that(decode_number("3/4"), is_(equal_to(Fraction(3, 4))))
    assert_that(decode_number("-7"), is_(equal_to(Fraction(-7))))
    assert_that(decode_number(0.5), is_(equal_to(Fraction(1, 2))))
    assert_that(decode_number(30), is_(equal_to(Fraction(30))))
    assert_that(calling(decode_number).with_args(False), raises(TypeError))
    assert_that(calling(decode_number).with_args("3/0"), raises(ZeroDivisionError))


def test_encode_number():
    assert_that(encode_number(Fraction(4)), is_(equal_to(4)))
    assert_that(encode_number(Fraction(33, 2)), is_(equal_to("33/2")))
    assert_that(encode_number(1.5), is_(equal_to(1.5)))


def test_format_number():
    assert_that(format_number(Fraction(-15, 16)), is_(equal_to("-15/16")))
    assert_that(format_number(Fraction(4)), is_(equal_to("4")))
    assert_that(format_number(-0.0), is_(equal_to("0")))
    assert_that(format_number(0.1), is_(equal_to("0.10000000000000001")))
    assert_that(format_number(None), is_(equal_to("undefined")))
