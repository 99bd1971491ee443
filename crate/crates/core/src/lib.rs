//! Exact complete, joint and g-fold joint weight enumerators of linear codes
//! over F_q (q ≤ 16), their MacWilliams transforms, and averages over the
//! group of monomial matrices, both by brute force and by closed multinomial
//! formulas.
//!
//! ```
//! use wenum::{cjwe, Budget, Field, LinearCode, RationalPoly};
//!
//! let f2 = Field::of_order(2).unwrap();
//! let rep = LinearCode::from_indices(&f2, 2, &[&[1, 1]]).unwrap();
//! let p: RationalPoly = cjwe(&rep, &rep, &Budget::default()).unwrap();
//! assert_eq!(p.pretty_rational(), "x[0,0]^2 + x[0,1]^2 + x[1,0]^2 + x[1,1]^2");
//! ```

pub mod average;
pub mod budget;
pub mod claims;
pub mod code;
pub mod codefile;
pub mod composition;
pub mod cyclotomic;
pub mod enumerators;
pub mod error;
pub mod field;
pub mod macwilliams;
pub mod monomial;
pub mod multinomial;
pub mod poly;
pub mod scalar;

use num_complex::Complex;
use num_rational::BigRational;

pub use average::{
    avg_cjwe_bruteforce, avg_cjwe_closedform, avg_gfold_bruteforce, avg_gfold_closedform,
    avg_macwilliams, compare, AverageReport, Difference,
};
pub use budget::Budget;
pub use claims::{check_lemma31, check_lemma42, verify, Claim, ClaimCheck, Grid};
pub use code::{all_codes, random_code, LinearCode, Word};
pub use codefile::{parse_code, write_code};
pub use composition::{Census, CompositionProfile};
pub use cyclotomic::Cyclotomic;
pub use enumerators::{cjwe, cwe, gfold_cjwe};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use macwilliams::{macwilliams_transform, Variant};
pub use monomial::{group_order, monomial_group, MonomialMatrix};
pub use multinomial::multinomial;
pub use poly::{Assignment, EnumeratorPolynomial, ExponentVector, Substitution};
pub use scalar::Scalar;

/// Exact rational coefficients; every enumerator and average is one of these.
pub type RationalPoly = EnumeratorPolynomial<BigRational>;
/// Coefficients in Q(ζ_p), used while expanding character sums.
pub type CyclotomicPoly = EnumeratorPolynomial<Cyclotomic>;
/// Floating-point images, for numeric spot checks only.
pub type FloatPoly = EnumeratorPolynomial<f64>;
pub type ComplexPoly = EnumeratorPolynomial<Complex<f64>>;
