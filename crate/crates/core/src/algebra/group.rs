use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntegerMatrix};

/// Finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`
/// in invariant-factor form (`t_i >= 2`, `t_i | t_{i+1}`).
///
/// The normal form is enforced by every constructor, so `==` is group isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, [order.into()])
    }

    /// Direct sum of `Z^rank` and cyclic groups of the given orders. An order of
    /// zero contributes a copy of `Z`; orders are taken up to sign.
    pub fn from_cyclic_orders(rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = rank;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        if finite.len() <= 1 {
            return FgAbelianGroup { rank, torsion: finite };
        }
        let snf = smith_normal_form(&IntegerMatrix::diagonal(&finite));
        let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        FgAbelianGroup { rank, torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Orders of the cyclic summands, with `0` standing for `Z`.
    fn summands(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::repeat_n(BigInt::zero(), self.rank).chain(self.torsion.iter().cloned())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        Self::from_cyclic_orders(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).cloned())
    }
}

/// `Z/a ⊗ Z/b = Z/gcd(a, b)` where `0` encodes `Z` (gcd(0, b) = b).
pub fn tensor_product(g: &FgAbelianGroup, h: &FgAbelianGroup) -> FgAbelianGroup {
    let orders: Vec<BigInt> =
        g.summands().flat_map(|a| h.summands().map(move |b| a.gcd(&b))).collect();
    FgAbelianGroup::from_cyclic_orders(0, orders)
}

/// `Tor(Z, -) = 0`, `Tor(Z/a, Z/b) = Z/gcd(a, b)`.
pub fn tor_product(g: &FgAbelianGroup, h: &FgAbelianGroup) -> FgAbelianGroup {
    let orders: Vec<BigInt> = g
        .torsion
        .iter()
        .flat_map(|a| h.torsion.iter().map(move |b| a.gcd(b)))
        .collect();
    FgAbelianGroup::from_cyclic_orders(0, orders)
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
