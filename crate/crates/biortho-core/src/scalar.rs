//! Exact rational scalars and the Gamma-function combinatorics built on them:
//! Pochhammer symbols, generalized binomials, parameter blocks Δ(υ,γ), and
//! quotients of Gamma values that reduce to rationals through integer shifts.
//!
//! Every polynomial family in this crate keeps its coefficients in [`Rational`],
//! so all constructions and verifications downstream are exact. Gamma values
//! never get evaluated transcendentally here: norm constants are always Gamma
//! *ratios* with integer offsets, and [`GammaQuotient`] reduces those to
//! rationals via Pochhammer products.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision exact rational, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("gamma pole at nonpositive integer argument {0}")]
    GammaPole(String),
    #[error("gamma quotient does not reduce to a rational: {0}")]
    Irreducible(String),
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"`, an integer string, or a decimal string (`"1.25"` becomes
/// `5/4` exactly).
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_digits = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| err())?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_digits: BigInt = frac_part.parse().map_err(|_| err())?;
        let total = int_digits.abs() * &scale + frac_digits;
        let signed = if negative { -total } else { total };
        return Ok(Rational::new(signed, scale));
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Falling factorial `a (a-1) ... (a-k+1)`.
pub fn falling_factorial(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term -= Rational::one();
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Integer binomial coefficient as a rational.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    // C(n,k) = (n-k+1)_k / k!
    pochhammer(&rat_int((n - k) as i64 + 1), k) / factorial(k)
}

/// Generalized binomial `C(a, k) = (-1)^k (-a)_k / k!` for rational `a`.
pub fn binomial_rational(a: &Rational, k: usize) -> Rational {
    let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
    sign * pochhammer(&-a.clone(), k) / factorial(k)
}

/// The υ-term parameter block `Δ(υ, γ) = γ/υ, (γ+1)/υ, ..., (γ+υ-1)/υ`.
///
/// Its defining product identity is `υ^{υk} ∏_i (Δ_i)_k = (γ)_{υk}`.
pub fn delta_params(upsilon: u32, gamma: &Rational) -> Vec<Rational> {
    assert!(upsilon >= 1, "delta_params requires upsilon >= 1");
    let u = rat_int(upsilon as i64);
    (0..upsilon)
        .map(|i| (gamma + rat_int(i as i64)) / &u)
        .collect()
}

fn is_nonpositive_integer(a: &Rational) -> bool {
    a.is_integer() && !a.is_positive()
}

/// A formal product `factor · ∏ Γ(numer_i) / ∏ Γ(denom_j)`.
///
/// Arguments that differ by integers cancel into exact Pochhammer products;
/// leftover Γ of explicit positive integers collapse to factorials. Anything
/// else is irreducible and [`GammaQuotient::reduce`] reports it instead of
/// approximating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaQuotient {
    factor: Rational,
    numer: Vec<Rational>,
    denom: Vec<Rational>,
}

impl GammaQuotient {
    pub fn one() -> Self {
        GammaQuotient {
            factor: Rational::one(),
            numer: Vec::new(),
            denom: Vec::new(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        GammaQuotient {
            factor: r,
            ..GammaQuotient::one()
        }
    }

    /// Multiplies by `Γ(arg)`.
    pub fn times_gamma(mut self, arg: Rational) -> Self {
        self.numer.push(arg);
        self
    }

    /// Divides by `Γ(arg)`.
    pub fn over_gamma(mut self, arg: Rational) -> Self {
        self.denom.push(arg);
        self
    }

    pub fn times_rational(mut self, r: &Rational) -> Self {
        self.factor *= r;
        self
    }

    /// Quotient of two gamma quotients.
    pub fn over(mut self, other: &GammaQuotient) -> Self {
        self.factor /= &other.factor;
        self.numer.extend(other.denom.iter().cloned());
        self.denom.extend(other.numer.iter().cloned());
        self
    }

    /// Reduces to an exact rational, cancelling `Γ(a)/Γ(b)` pairs with
    /// `a - b` an integer and evaluating leftover Γ at positive integers.
    ///
    /// A pole of a numerator Γ is an error; a pole of a denominator Γ makes
    /// the whole quotient zero.
    pub fn reduce(&self) -> Result<Rational, ScalarError> {
        let mut numer = self.numer.clone();
        let mut denom = self.denom.clone();
        let mut factor = self.factor.clone();
        let mut zero_from_denominator_pole = false;

        let mut i = 0;
        while i < numer.len() {
            let mut paired = false;
            for j in 0..denom.len() {
                let diff = &numer[i] - &denom[j];
                if diff.is_integer() {
                    let b = denom[j].clone();
                    let k = diff.to_integer();
                    // Γ(b+k)/Γ(b) = (b)_k for k >= 0, 1/(b+k)_{-k} otherwise.
                    if k >= BigInt::zero() {
                        let steps = k.to_usize().expect("gamma shift fits usize");
                        let poch = pochhammer(&b, steps);
                        if poch.is_zero() {
                            // Γ pole in the denominator: the quotient vanishes.
                            zero_from_denominator_pole = true;
                        } else {
                            factor *= poch;
                        }
                    } else {
                        let steps = (-k).to_usize().expect("gamma shift fits usize");
                        let poch = pochhammer(&numer[i], steps);
                        if poch.is_zero() {
                            return Err(ScalarError::GammaPole(format!("Γ({})", numer[i])));
                        }
                        factor /= poch;
                    }
                    numer.remove(i);
                    denom.remove(j);
                    paired = true;
                    break;
                }
            }
            if !paired {
                i += 1;
            }
        }

        let eval_leftover = |args: &[Rational]| -> Result<Rational, ScalarError> {
            let mut acc = Rational::one();
            for a in args {
                if is_nonpositive_integer(a) {
                    return Err(ScalarError::GammaPole(format!("Γ({a})")));
                }
                if !a.is_integer() {
                    return Err(ScalarError::Irreducible(format!("Γ({a})")));
                }
                let n = a.to_integer().to_usize().expect("gamma arg fits usize");
                acc *= factorial(n - 1);
            }
            Ok(acc)
        };

        // Evaluate numerator poles before declaring the quotient zero, so
        // Γ(0)/Γ(-1) style expressions still error out.
        let numer_val = eval_leftover(&numer)?;
        if zero_from_denominator_pole {
            return Ok(Rational::zero());
        }
        let denom_val = eval_leftover(&denom)?;
        Ok(factor * numer_val / denom_val)
    }
}

impl fmt::Display for GammaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factor)?;
        for a in &self.numer {
            write!(f, "·Γ({a})")?;
        }
        if !self.denom.is_empty() {
            write!(f, "/[")?;
            for (i, a) in self.denom.iter().enumerate() {
                if i > 0 {
                    write!(f, "·")?;
                }
                write!(f, "Γ({a})")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// `B(a+j, b+k) / B(a, b)` as an exact rational, via Pochhammer-ratio
/// reduction of the three Gamma quotients involved. Never evaluates a
/// transcendental Gamma.
pub fn beta_moment_ratio(
    a: &Rational,
    b: &Rational,
    j: usize,
    k: i64,
) -> Result<Rational, ScalarError> {
    let shift = |base: &Rational, by: Rational| base + by;
    GammaQuotient::one()
        .times_gamma(shift(a, rat_int(j as i64)))
        .times_gamma(shift(b, rat_int(k)))
        .times_gamma(a + b)
        .over_gamma(a.clone())
        .over_gamma(b.clone())
        .over_gamma(shift(&(a + b), rat_int(j as i64 + k)))
        .reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_base_cases() {
        assert_eq!(pochhammer(&rat_int(3), 0), rat_int(1));
        assert_eq!(pochhammer(&rat_int(3), 2), rat_int(12));
        assert_eq!(pochhammer(&rat_int(-2), 4), rat_int(0));
    }

    #[test]
    fn delta_blocks() {
        assert_eq!(delta_params(1, &rat_int(5)), vec![rat_int(5)]);
        assert_eq!(delta_params(2, &rat_int(1)), vec![rat(1, 2), rat_int(1)]);
        assert_eq!(
            delta_params(3, &rat_int(-2)),
            vec![rat(-2, 3), rat(-1, 3), rat_int(0)]
        );
    }

    #[test]
    fn beta_ratio_fixtures() {
        // identity shift
        assert_eq!(
            beta_moment_ratio(&rat_int(1), &rat_int(4), 0, 0).unwrap(),
            rat_int(1)
        );
        // oracle: B(2,3)/B(1,4) = (1!2!/4!) / (0!3!/4!) = (2/24)/(6/24) = 1/3
        assert_eq!(
            beta_moment_ratio(&rat_int(1), &rat_int(4), 1, -1).unwrap(),
            rat(1, 3)
        );
        // Γ(0) pole
        assert!(matches!(
            beta_moment_ratio(&rat_int(1), &rat_int(4), 0, -4),
            Err(ScalarError::GammaPole(_))
        ));
    }

    #[test]
    fn gamma_quotient_integer_eval() {
        // Γ(1)Γ(9)/Γ(10) = 1/9
        let q = GammaQuotient::one()
            .times_gamma(rat_int(1))
            .times_gamma(rat_int(9))
            .over_gamma(rat_int(10));
        assert_eq!(q.reduce().unwrap(), rat(1, 9));
    }

    #[test]
    fn gamma_quotient_denominator_pole_is_zero() {
        // Γ(1)/Γ(-1) = 0 since Γ(-1) blows up.
        let q = GammaQuotient::one()
            .times_gamma(rat_int(1))
            .over_gamma(rat_int(-1));
        assert_eq!(q.reduce().unwrap(), Rational::zero());
    }

    #[test]
    fn gamma_quotient_irreducible() {
        let q = GammaQuotient::one()
            .times_gamma(rat(3, 2))
            .over_gamma(rat_int(2));
        assert!(matches!(q.reduce(), Err(ScalarError::Irreducible(_))));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("7/2").unwrap(), rat(7, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn pochhammer_recursion_randomized() {
        // (a)_{k+1} = (a)_k (a+k), large randomized sweep.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10_000 {
            let a = rat(rng.gen_range(-40..40), rng.gen_range(1..12));
            let k = rng.gen_range(0..=63usize);
            let lhs = pochhammer(&a, k + 1);
            let rhs = pochhammer(&a, k) * (&a + rat_int(k as i64));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn delta_block_product_identity() {
        // υ^{υk} ∏ (Δ_i)_k = (γ)_{υk} for all υ ≤ 4, k ≤ 12.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for upsilon in 1..=4u32 {
            for k in 0..=12usize {
                let gamma = rat(rng.gen_range(-30..30), rng.gen_range(1..9));
                let lhs: Rational = delta_params(upsilon, &gamma)
                    .iter()
                    .map(|d| pochhammer(d, k))
                    .product::<Rational>()
                    * rat_int(upsilon as i64).pow((upsilon as usize * k) as i32);
                assert_eq!(lhs, pochhammer(&gamma, upsilon as usize * k));
            }
        }
    }

    proptest! {
        #[test]
        fn binomial_rational_matches_integer(n in 0usize..12, k in 0usize..12) {
            let gen = binomial_rational(&rat_int(n as i64), k);
            prop_assert_eq!(gen, binomial(n, k));
        }

        #[test]
        fn beta_ratio_chain(a_num in 1i64..20, b_num in 1i64..20, j in 0usize..6, k in 0i64..6) {
            // B-ratio composes multiplicatively in the first slot.
            let a = rat(a_num, 3);
            let b = rat(b_num, 2);
            let one_step = beta_moment_ratio(&a, &b, j, k).unwrap();
            let via = beta_moment_ratio(&a, &b, j, 0).unwrap()
                * beta_moment_ratio(&(&a + rat_int(j as i64)), &b, 0, k).unwrap();
            prop_assert_eq!(one_step, via);
        }
    }
}
