//! The catalog of example groups and the counting machinery built on it.
//!
//! Groups are named by a [`BuilderSpec`], which has a JSON form and a
//! one-line form such as `direct_power(alt(5),2)`; the two map one-to-one.

mod crown_power;
mod goursat;
mod numbers;
mod spec;

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::linalg::{decode, encode, FpMatrix, Representation};
use crate::perm::{direct_product, FiniteGroup, Permutation, SemidirectProduct};

pub use crown_power::{
    cocycle_count, crown_power_group, klein_crown_modules, module_scan, sd16_crown_modules, CrownPower,
};
pub use goursat::{diagonal_count, goursat_maximals, DiagonalCountReport, GoursatReport, MaximalKind};
pub use numbers::{is_p_prime, is_prime, prime_power_base};
pub use spec::{BuilderSpec, CrownBase};

fn perm(cycles: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(cycles, degree).expect("catalog generator")
}

fn cycle_on(points: impl IntoIterator<Item = usize>, degree: usize) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for w in 0..pts.len() {
        images[pts[w]] = pts[(w + 1) % pts.len()] as u32;
    }
    Permutation::from_images(images).expect("cycle is a bijection")
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("cyclic(n) needs n ≥ 1".into()));
    }
    Ok(FiniteGroup::generate(&[cycle_on(0..n, n)])?.with_name(format!("cyclic({n})")))
}

/// The dihedral group of order `2n` acting on an `n`-gon.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(GroupError::InvalidArgument("dihedral(n) needs n ≥ 3".into()));
    }
    let reflection: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
    Ok(FiniteGroup::generate(&[
        cycle_on(0..n, n),
        Permutation::from_images(reflection)?,
    ])?
    .with_name(format!("dihedral({n})")))
}

/// `(C_p)^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) || k == 0 {
        return Err(GroupError::InvalidArgument(
            "elementary_abelian(p,k) needs p prime and k ≥ 1".into(),
        ));
    }
    let degree = p * k;
    let gens: Vec<Permutation> = (0..k).map(|i| cycle_on(i * p..(i + 1) * p, degree)).collect();
    Ok(FiniteGroup::generate(&gens)?.with_name(format!("elementary_abelian({p},{k})")))
}

pub fn sym(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("sym(n) needs n ≥ 1".into()));
    }
    let gens = if n == 1 {
        vec![Permutation::identity(1)]
    } else {
        vec![cycle_on([0, 1], n), cycle_on(0..n, n)]
    };
    Ok(FiniteGroup::generate(&gens)?.with_name(format!("sym({n})")))
}

pub fn alt(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("alt(n) needs n ≥ 1".into()));
    }
    let gens = if n < 3 {
        vec![Permutation::identity(n)]
    } else {
        (2..n).map(|i| cycle_on([0, 1, i], n)).collect()
    };
    Ok(FiniteGroup::generate(&gens)?.with_name(format!("alt({n})")))
}

pub fn quaternion8() -> Result<FiniteGroup> {
    Ok(FiniteGroup::generate(&[
        perm("(1,2,3,4)(5,6,7,8)", 8),
        perm("(1,5,3,7)(2,8,4,6)", 8),
    ])?
    .with_name("quaternion8"))
}

/// The permutation of the nonzero vectors of `F_p^n` induced by `v ↦ vA`.
/// Point `i` is the vector with code `i + 1`.
pub fn matrix_permutation(a: &FpMatrix) -> Permutation {
    let p = a.prime();
    let size = (p as usize).pow(a.dim() as u32);
    let images = (1..size)
        .map(|code| (encode(&a.apply(&decode(code, p, a.dim())), p) - 1) as u32)
        .collect();
    Permutation::from_images(images).expect("invertible matrix")
}

/// Recovers the matrix of a permutation built by [`matrix_permutation`].
pub fn permutation_matrix(x: &Permutation, p: u32, dim: usize) -> FpMatrix {
    let rows: Vec<Vec<i64>> = (0..dim)
        .map(|i| {
            let code = (p as usize).pow(i as u32);
            decode(x.image(code - 1) + 1, p, dim)
                .into_iter()
                .map(i64::from)
                .collect()
        })
        .collect();
    FpMatrix::from_rows(p, &rows).expect("rows over F_p")
}

/// Generators `a` (order 8) and `b` (order 2) of the semidihedral group of
/// order 16 inside `GL(2,3)`, with `b a b = a^3`.
pub fn semidihedral16_matrices() -> (FpMatrix, FpMatrix) {
    let all: Vec<FpMatrix> = (0..81)
        .map(|code| {
            let e = decode(code, 3, 4);
            FpMatrix::from_rows(
                3,
                &[
                    vec![e[0] as i64, e[1] as i64],
                    vec![e[2] as i64, e[3] as i64],
                ],
            )
            .expect("2×2 over F_3")
        })
        .filter(|m| m.is_invertible())
        .collect();
    for a in all.iter().filter(|m| m.order() == Some(8)) {
        let a3 = a.mul(a).mul(a);
        for b in all.iter().filter(|m| m.order() == Some(2)) {
            if b.mul(a).mul(b) == a3 {
                return (a.clone(), b.clone());
            }
        }
    }
    unreachable!("GL(2,3) contains a semidihedral Sylow 2-subgroup")
}

/// The semidihedral group of order 16 on the 8 nonzero vectors of `F_3^2`.
pub fn semidihedral16() -> Result<FiniteGroup> {
    let (a, b) = semidihedral16_matrices();
    let g = FiniteGroup::generate(&[matrix_permutation(&a), matrix_permutation(&b)])?
        .with_name("semidihedral16");
    let (ga, gb) = (g.generator_indices()[0], g.generator_indices()[1]);
    let presentation = g.order() == 16
        && g.element_order(ga) == 8
        && g.element_order(gb) == 2
        && g.mul(g.mul(gb, ga), gb) == g.pow(ga, 3);
    if !presentation {
        return Err(GroupError::FormulaMismatch(
            "semidihedral generators fail a^8 = b^2 = 1, bab = a^3".into(),
        ));
    }
    Ok(g)
}

pub fn direct_power(base: &FiniteGroup, t: usize, caps: &Caps) -> Result<FiniteGroup> {
    if t == 0 {
        return Err(GroupError::InvalidArgument("direct_power needs t ≥ 1".into()));
    }
    let order = (base.order() as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    if order > caps.order as u128 {
        return Err(GroupError::cap("group order", caps.order, order.min(usize::MAX as u128) as usize));
    }
    let factors: Vec<&FiniteGroup> = std::iter::repeat_n(base, t).collect();
    Ok(direct_product(&factors, caps)?.with_name(format!("direct_power({},{t})", base.label())))
}

/// `(C_p)^k ⋊ C_2` with `C_2` inverting every factor.
pub fn inversion_power(p: usize, k: usize, caps: &Caps) -> Result<SemidirectProduct> {
    if !is_prime(p as u64) || k == 0 {
        return Err(GroupError::InvalidArgument(
            "inversion_power(p,k) needs p prime and k ≥ 1".into(),
        ));
    }
    let c2 = Arc::new(cyclic(2)?);
    let minus = FpMatrix::scalar(p as u32, 1, (p - 1) as u32);
    let module = Representation::new(p as u32, 1, vec![minus])?;
    SemidirectProduct::linear(c2, vec![module; k], caps)
}

impl BuilderSpec {
    /// Builds the named group.
    pub fn build(&self, caps: &Caps) -> Result<FiniteGroup> {
        if let Some(order) = self.known_order() {
            if order > caps.order as u128 {
                return Err(GroupError::cap("group order", caps.order, order.min(usize::MAX as u128) as usize));
            }
        }
        let g = match self {
            BuilderSpec::Cyclic { n } => cyclic(*n)?,
            BuilderSpec::Dihedral { n } => dihedral(*n)?,
            BuilderSpec::ElementaryAbelian { p, k } => elementary_abelian(*p, *k)?,
            BuilderSpec::Sym { n } => sym(*n)?,
            BuilderSpec::Alt { n } => alt(*n)?,
            BuilderSpec::Semidihedral16 => semidihedral16()?,
            BuilderSpec::Quaternion8 => quaternion8()?,
            BuilderSpec::DirectPower { base, t } => direct_power(&base.build(caps)?, *t, caps)?,
            BuilderSpec::DirectProduct { left, right } => {
                let (l, r) = (left.build(caps)?, right.build(caps)?);
                direct_product(&[&l, &r], caps)?
            }
            BuilderSpec::InversionPower { p, k } => inversion_power(*p, *k, caps)?.group,
            BuilderSpec::CrownPower { base, rho } => {
                let (h, modules) = match base {
                    CrownBase::Klein => klein_crown_modules(*rho)?,
                    CrownBase::Sd16 => sd16_crown_modules(*rho, caps)?,
                };
                crown_power_group(h, modules, caps)?.product.group
            }
        };
        if g.order() > caps.order {
            return Err(GroupError::cap("group order", caps.order, g.order()));
        }
        Ok(g.with_name(self.to_string()))
    }

    /// Order of the catalog families, saturating; `None` for the rest.
    fn known_order(&self) -> Option<u128> {
        let factorial = |n: usize| (2..=n as u128).fold(1u128, |a, k| a.saturating_mul(k));
        match self {
            BuilderSpec::Cyclic { n } => Some(*n as u128),
            BuilderSpec::Dihedral { n } => Some(2 * *n as u128),
            BuilderSpec::ElementaryAbelian { p, k } => Some((*p as u128).saturating_pow(*k as u32)),
            BuilderSpec::Sym { n } => Some(factorial(*n)),
            BuilderSpec::Alt { n } => Some(factorial(*n).div_ceil(2)),
            BuilderSpec::DirectPower { base, t } => base.known_order().map(|o| o.saturating_pow(*t as u32)),
            BuilderSpec::DirectProduct { left, right } => Some(left.known_order()?.saturating_mul(right.known_order()?)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let caps = Caps::default();
        for (text, order) in [
            ("cyclic(1)", 1),
            ("cyclic(6)", 6),
            ("dihedral(5)", 10),
            ("elementary_abelian(2,3)", 8),
            ("sym(4)", 24),
            ("alt(5)", 60),
            ("alt(2)", 1),
            ("quaternion8", 8),
            ("semidihedral16", 16),
            ("inversion_power(3,3)", 54),
            ("direct_product(cyclic(2),sym(3))", 12),
        ] {
            let spec: BuilderSpec = text.parse().unwrap();
            assert_eq!(spec.build(&caps).unwrap().order(), order, "{text}");
        }
    }

    #[test]
    fn semidihedral_matrices_round_trip() {
        let (a, b) = semidihedral16_matrices();
        for m in [&a, &b] {
            assert_eq!(&permutation_matrix(&matrix_permutation(m), 3, 2), m);
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion8().unwrap();
        let involutions = (0..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }
}
