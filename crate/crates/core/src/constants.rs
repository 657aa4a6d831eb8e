//! Frozen oracle output.  Regenerate with `witt-theta oracle regen-constants`;
//! the `constants_match_oracle` test recomputes everything and compares the text.

/// Primes on which every constant below was recomputed: 2, 3, 5, 7.
pub const CHECKED_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Diagonal of the hyperbolic plane for every diagonalizable type.
/// Certified isotropic as a quadratic form and through the trace form of each quadratic extension.
pub const HYPERBOLIC_DIAG: [i64; 2] = [1, -1];

/// A ternary quadratic form with discriminant `d` and Hasse invariant `h` is isotropic
/// iff `h == TERNARY_ISOTROPIC_SIGN * (-1, -d)`.  Fitted on 180 ternary forms.
pub const TERNARY_ISOTROPIC_SIGN: i8 = 1;

/// A quaternary quadratic form is anisotropic iff `d == 1` and
/// `h == QUATERNARY_ANISOTROPIC_SIGN * (-1, -1)`.  Fitted on 435 quaternary forms.
pub const QUATERNARY_ANISOTROPIC_SIGN: i8 = -1;

/// Reduced norms of nonzero trace-zero quaternions cover every square class except
/// the class of this integer.
pub const TRACE_ZERO_MISSING_NORM: i64 = -1;

/// A quaternionic skew-Hermitian form of dimension 2 is isotropic iff its discriminant is
/// trivial; in dimension 3 it is anisotropic iff its discriminant is the class of this integer.
pub const QUAT_SKEW_TERNARY_ANISOTROPIC_DISC: i64 = -1;

/// `(p, a, e)`: the Weil index of `x -> psi(a x^2)` is `exp(2 pi i e / 8)` for the
/// standard character; `p = 0` stands for R.  One row per square-class representative.
pub const WEIL_INDEX: &[(u64, i64, u8)] = &[
    (2, 1, 1),
    (2, 3, 7),
    (2, 5, 1),
    (2, 7, 7),
    (2, 2, 1),
    (2, 6, 3),
    (2, 10, 5),
    (2, 14, 7),
    (3, 1, 0),
    (3, 2, 0),
    (3, 3, 2),
    (3, 6, 6),
    (5, 1, 0),
    (5, 2, 0),
    (5, 5, 0),
    (5, 10, 4),
    (7, 1, 0),
    (7, 3, 0),
    (7, 7, 2),
    (7, 21, 6),
    (0, 1, 1),
    (0, -1, 7),
];
