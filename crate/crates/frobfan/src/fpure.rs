//! Fedder's F-purity criterion for hypersurfaces.

use crate::poly::{Monomial, MonomialIdeal, PolynomialFp};
use crate::{Error, Result};

/// Outcome of the hypersurface F-purity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPurityReport {
    pub f_pure: bool,
    /// Graded-lex-least monomial of `f^{p-1}` outside `(x_0^p, ..., x_d^p)`,
    /// when one exists.
    pub witness: Option<Monomial>,
}

/// Hypersurface form of Fedder's criterion: `R = k[x]/(f)` is F-pure iff
/// `f^{p-1}` does not lie in the Frobenius power `(x_0^p, ..., x_d^p)`.
///
/// A monomial avoids that ideal exactly when every exponent is at most
/// `p - 1`; the witness is the least such monomial of `f^{p-1}`.
pub fn is_f_pure_hypersurface(f: &PolynomialFp, p: u64) -> Result<FPurityReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.modulus() != p {
        return Err(Error::InvalidInput(format!(
            "polynomial has modulus {}, expected {p}",
            f.modulus()
        )));
    }
    let arity = f.arity();
    let variable_powers = MonomialIdeal::new(
        arity,
        (0..arity)
            .map(|i| Monomial::variable(i, arity).pow(p as u32))
            .collect(),
    )?;
    let g = f.pow(p - 1);
    let witness = g
        .terms()
        .map(|(m, _)| m)
        .find(|m| !variable_powers.contains(m).unwrap());
    Ok(FPurityReport {
        f_pure: witness.is_some(),
        witness: witness.cloned(),
    })
}
