use num_traits::{One, Signed};

use crate::exact::{IntMat, Poly};
use crate::numfield::count_real_roots;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicOperator {
    pub a: IntMat,
    pub char_poly: Poly,
    pub irreducible: bool,
    pub totally_real: bool,
    pub unimodular: bool,
    pub hyperbolic: bool,
}

impl HyperbolicOperator {
    pub fn reasons(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.irreducible {
            out.push("characteristic polynomial is reducible over Q");
        }
        if !self.totally_real {
            out.push("characteristic polynomial has non-real roots");
        }
        if !self.unimodular {
            out.push("|det| != 1");
        }
        out
    }
}

pub fn check_hyperbolic(a: &IntMat) -> HyperbolicOperator {
    let char_poly = a.char_poly();
    let n = char_poly.degree();
    let irreducible = n <= 4 && char_poly.is_irreducible();
    let totally_real = irreducible && count_real_roots(&char_poly) == n;
    let unimodular = a.det().abs().is_one();
    HyperbolicOperator {
        a: a.clone(),
        hyperbolic: irreducible && totally_real && unimodular,
        char_poly,
        irreducible,
        totally_real,
        unimodular,
    }
}
