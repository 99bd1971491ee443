//! Complete, joint and g-fold joint weight enumerators.

use crate::budget::Budget;
use crate::code::LinearCode;
use crate::composition::Census;
use crate::error::Result;
use crate::poly::EnumeratorPolynomial;
use crate::scalar::Scalar;

/// CW_C = Σ_{u∈C} Π_a x_a^{s_a(u)}.
pub fn cwe<C: Scalar>(code: &LinearCode, budget: &Budget) -> Result<EnumeratorPolynomial<C>> {
    gfold_cjwe(std::slice::from_ref(code), budget)
}

/// CJW_{C1,C2} = Σ_{(u,v)} Π_{α,β} x_{αβ}^{η_{αβ}(u,v)}.
pub fn cjwe<C: Scalar>(
    c1: &LinearCode,
    c2: &LinearCode,
    budget: &Budget,
) -> Result<EnumeratorPolynomial<C>> {
    gfold_cjwe(&[c1.clone(), c2.clone()], budget)
}

/// The g-fold enumerator over `C_1 × … × C_g`.
pub fn gfold_cjwe<C: Scalar>(
    codes: &[LinearCode],
    budget: &Budget,
) -> Result<EnumeratorPolynomial<C>> {
    let census = Census::of(codes, budget)?;
    Ok(EnumeratorPolynomial::from_census(&census, codes[0].field().size()))
}
