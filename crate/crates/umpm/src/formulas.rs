//! Exact closed-form and recurrence evaluation of the extremal edge count.
//!
//! Everything here is integer arithmetic over [`BigUint`]; nothing is floated
//! or approximated. The two independent routes to the extremal count — the
//! stratified closed form and the telescoped recurrence — share no code, so
//! agreement between them is a meaningful cross-check rather than a tautology.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, r)` with the usual convention `C(n, r) = 0`
/// for `r > n`.
pub fn binom(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Per-stratum coefficient: the number of edges in stratum `l` that live on
/// any fixed choice of `l` matching blocks.
///
/// For `l >= 2` this is the inclusion–exclusion count of k-subsets of `l`
/// blocks meeting every block, scaled by `(l-1)/l`:
///
/// ```text
/// b(k, l) = (l-1)/l * sum_{i=0}^{l-1} (-1)^i C(l, i) C(k(l-i), k)
/// ```
///
/// The sum is always divisible by `l` (the strata are unions of orbits under
/// cyclic block rotation), which this function checks. By convention
/// `b(k, 1) = 1` and `b(k, l) = 0` for `l > k`: a k-edge cannot meet more
/// than `k` blocks.
pub fn coeff_b(k: usize, ell: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    if ell == 0 {
        return Err(Error::domain("coefficient", "stratum index 0".to_string()));
    }
    if ell == 1 {
        return Ok(BigUint::one());
    }
    if ell > k {
        return Ok(BigUint::zero());
    }
    let mut sum = BigInt::zero();
    for i in 0..ell {
        let term = BigInt::from(binom(ell, i)) * BigInt::from(binom(k * (ell - i), k));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    debug_assert_eq!(sum.sign(), Sign::Plus, "onto count must be positive");
    let (q, r) = sum.div_rem(&BigInt::from(ell));
    if !r.is_zero() {
        return Err(Error::domain(
            "coefficient",
            format!("onto count for k={k}, l={ell} is not divisible by {ell}"),
        ));
    }
    let scaled = q * BigInt::from(ell - 1);
    Ok(scaled
        .to_biguint()
        .expect("coefficient is a product of nonnegative factors"))
}

/// The extremal edge count via the stratified closed form:
///
/// ```text
/// f(k, m) = m + sum_{l=2}^{k} b(k, l) C(m, l)
/// ```
pub fn f_theorem(k: usize, m: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    let mut total = BigUint::from(m);
    for ell in 2..=k {
        total += coeff_b(k, ell)? * binom(m, ell);
    }
    Ok(total)
}

/// The extremal edge count via the telescoped recurrence
///
/// ```text
/// a(1) = 1
/// a(m) = a(m-1) + C(km - 1, k) - C(k(m-1), k) + 1
/// ```
///
/// with `a(0) = 0` for the empty graph. Computed independently of
/// [`f_theorem`]; the two must agree everywhere.
pub fn f_telescoped(k: usize, m: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::UniformityTooSmall(k));
    }
    let mut a = BigInt::zero();
    for i in 1..=m {
        a +=
            BigInt::from(binom(k * i - 1, k)) - BigInt::from(binom(k * (i - 1), k)) + BigInt::one();
    }
    a.to_biguint().ok_or_else(|| {
        Error::domain(
            "recurrence",
            "telescoped sum went negative, which should be impossible".to_string(),
        )
    })
}

/// `f` as a `u64` for call sites that need machine integers (construction,
/// search); errors with [`Error::CountOverflow`] when the exact value does
/// not fit.
pub fn f_u64(k: usize, m: usize) -> Result<u64> {
    let v = f_theorem(k, m)?;
    u64::try_from(&v).map_err(|_| Error::CountOverflow)
}

/// The classical graph (`k = 2`) extremal count `m^2`, kept as its own tiny
/// routine so the general formula can be checked against it.
pub fn quadratic_bound(m: usize) -> BigUint {
    BigUint::from(m) * BigUint::from(m)
}
