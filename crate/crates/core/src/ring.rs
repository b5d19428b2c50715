//! Group-ring elements over Gaussian-rational scalars.
//!
//! A `RingElement` is a finitely supported map from group elements to
//! scalars. Zero coefficients are never stored, so equality is structural.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{dinv, dmul, ginv, gmul, DihedralElement, GElement};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupTag {
    Dihedral,
    Semidirect,
}

/// A group element of either group, tagged by variant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GroupElem {
    D(DihedralElement),
    G(GElement),
}

impl GroupElem {
    fn tag(&self) -> GroupTag {
        match self {
            GroupElem::D(_) => GroupTag::Dihedral,
            GroupElem::G(_) => GroupTag::Semidirect,
        }
    }

    fn mul(&self, other: &GroupElem) -> GroupElem {
        match (self, other) {
            (GroupElem::D(a), GroupElem::D(b)) => GroupElem::D(dmul(*a, *b)),
            (GroupElem::G(a), GroupElem::G(b)) => GroupElem::G(gmul(*a, *b)),
            _ => panic!("mixed group elements"),
        }
    }

    fn inv(&self) -> GroupElem {
        match self {
            GroupElem::D(a) => GroupElem::D(dinv(*a)),
            GroupElem::G(a) => GroupElem::G(ginv(*a)),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    tag: GroupTag,
    terms: BTreeMap<GroupElem, Scalar>,
}

impl RingElement {
    pub fn zero(tag: GroupTag) -> Self {
        RingElement {
            tag,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(tag: GroupTag) -> Self {
        let g = match tag {
            GroupTag::Dihedral => GroupElem::D(DihedralElement::IDENTITY),
            GroupTag::Semidirect => GroupElem::G(GElement::IDENTITY),
        };
        RingElement::monomial_elem(g, Scalar::one())
    }

    pub fn monomial_elem(g: GroupElem, c: Scalar) -> Self {
        let tag = g.tag();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        RingElement { tag, terms }
    }

    pub fn dihedral_monomial(g: DihedralElement, c: Scalar) -> Self {
        RingElement::monomial_elem(GroupElem::D(g), c)
    }

    pub fn g_monomial(g: GElement, c: Scalar) -> Self {
        RingElement::monomial_elem(GroupElem::G(g), c)
    }

    /// The generator S as a ring element.
    pub fn s() -> Self {
        RingElement::dihedral_monomial(DihedralElement::S, Scalar::one())
    }

    /// The generator e as a ring element.
    pub fn e() -> Self {
        RingElement::dihedral_monomial(DihedralElement::E, Scalar::one())
    }

    pub fn u() -> Self {
        RingElement::g_monomial(GElement::U, Scalar::one())
    }

    pub fn v() -> Self {
        RingElement::g_monomial(GElement::V, Scalar::one())
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GroupElem) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest word length (dihedral) or |a| + |b| (semidirect) in the support.
    pub fn max_word_length(&self) -> u64 {
        self.terms
            .keys()
            .map(|g| match g {
                GroupElem::D(d) => crate::group::word_length(*d),
                GroupElem::G(e) => e.a.unsigned_abs() + e.b.unsigned_abs(),
            })
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, g: GroupElem, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn scale(&self, c: &Scalar) -> RingElement {
        let mut out = RingElement::zero(self.tag);
        for (g, x) in &self.terms {
            out.add_term(*g, x * c);
        }
        out
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("({})*{:?}", c, g))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn ring_add(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    if x.tag != y.tag {
        return Err(Error::GroupMismatch);
    }
    let mut out = x.clone();
    for (g, c) in &y.terms {
        out.add_term(*g, c.clone());
    }
    Ok(out)
}

pub fn ring_sub(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    ring_add(x, &y.scale(&Scalar::from_int(-1)))
}

pub fn ring_mul(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    if x.tag != y.tag {
        return Err(Error::GroupMismatch);
    }
    let mut out = RingElement::zero(x.tag);
    for (g, c) in &x.terms {
        for (h, d) in &y.terms {
            out.add_term(g.mul(h), c * d);
        }
    }
    Ok(out)
}

/// (sum c_g g)* = sum conj(c_g) g^-1, the involutive anti-automorphism.
pub fn ring_star(x: &RingElement) -> RingElement {
    let mut out = RingElement::zero(x.tag);
    for (g, c) in &x.terms {
        out.add_term(g.inv(), c.conj());
    }
    out
}

/// The K-theory generators 1, (1+e)/2 and (1+Se)/2 (table convention).
pub fn projection(j: usize) -> RingElement {
    match j {
        0 => RingElement::one(GroupTag::Dihedral),
        1 => half_plus(DihedralElement::E),
        2 => half_plus(DihedralElement::s_pow_e(1)),
        _ => panic!("projection index must be 0, 1 or 2"),
    }
}

/// The alternate convention (1+eS)/2 = (1 + S^-1 e)/2; also a projection,
/// conjugate to `projection(2)`.
pub fn projection2_alt() -> RingElement {
    half_plus(DihedralElement::s_pow_e(-1))
}

fn half_plus(g: DihedralElement) -> RingElement {
    let mut out = RingElement::dihedral_monomial(DihedralElement::IDENTITY, Scalar::half());
    out.add_term(GroupElem::D(g), Scalar::half());
    out
}

/// The *-automorphism alpha_{-1}: S -> S, e -> S^-1 e, extended linearly.
/// On normal forms: S^m -> S^m, S^m e -> S^{m-1} e.
pub fn alpha_minus1(x: &RingElement) -> Result<RingElement> {
    if x.tag != GroupTag::Dihedral {
        return Err(Error::GroupMismatch);
    }
    let mut out = RingElement::zero(GroupTag::Dihedral);
    for (g, c) in &x.terms {
        let GroupElem::D(d) = g else { unreachable!() };
        let image = if d.flip {
            DihedralElement::s_pow_e(d.shift - 1)
        } else {
            *d
        };
        out.add_term(GroupElem::D(image), c.clone());
    }
    Ok(out)
}

/// Exact check of p = p* = p^2.
pub fn is_projection(p: &RingElement) -> bool {
    ring_star(p) == *p && ring_mul(p, p).map(|sq| sq == *p).unwrap_or(false)
}

/// Exact check of u u* = u* u = 1.
pub fn is_unitary(u: &RingElement) -> bool {
    let one = RingElement::one(u.tag);
    let star = ring_star(u);
    ring_mul(u, &star).map(|x| x == one).unwrap_or(false)
        && ring_mul(&star, u).map(|x| x == one).unwrap_or(false)
}

// --- JSON wire format ---------------------------------------------------
//
// {"group": "dihedral"|"semidirect",
//  "terms": [{"g": [m, eps], "re": "p/q", "im": "p/q"}, ...]}

pub fn ring_to_json(x: &RingElement) -> Value {
    let group = match x.tag {
        GroupTag::Dihedral => "dihedral",
        GroupTag::Semidirect => "semidirect",
    };
    let terms: Vec<Value> = x
        .terms
        .iter()
        .map(|(g, c)| {
            let gv = match g {
                GroupElem::D(d) => json!([d.shift, i64::from(d.flip)]),
                GroupElem::G(e) => json!([e.a, e.b]),
            };
            json!({
                "g": gv,
                "re": Scalar::rational_to_string(&c.re),
                "im": Scalar::rational_to_string(&c.im),
            })
        })
        .collect();
    json!({"group": group, "terms": terms})
}

pub fn ring_from_json(v: &Value) -> Result<RingElement> {
    let bad = |m: &str| Error::BadInput(format!("ring element: {m}"));
    let tag = match v.get("group").and_then(Value::as_str) {
        Some("dihedral") => GroupTag::Dihedral,
        Some("semidirect") => GroupTag::Semidirect,
        _ => return Err(bad("missing or unknown \"group\"")),
    };
    let mut out = RingElement::zero(tag);
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"terms\" array"))?;
    for t in terms {
        let g = t
            .get("g")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term without \"g\""))?;
        if g.len() != 2 {
            return Err(bad("\"g\" must be a pair"));
        }
        let x = g[0].as_i64().ok_or_else(|| bad("non-integer index"))?;
        let y = g[1].as_i64().ok_or_else(|| bad("non-integer index"))?;
        let elem = match tag {
            GroupTag::Dihedral => {
                if y != 0 && y != 1 {
                    return Err(bad("flip bit must be 0 or 1"));
                }
                GroupElem::D(DihedralElement::new(x, y == 1))
            }
            GroupTag::Semidirect => GroupElem::G(GElement::new(x, y)),
        };
        let re = t
            .get("re")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("term without \"re\""))?;
        let im = t
            .get("im")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("term without \"im\""))?;
        let c = Scalar {
            re: Scalar::rational_from_str(re)?,
            im: Scalar::rational_from_str(im)?,
        };
        out.add_term(elem, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn e_squared_is_one() {
        let e = RingElement::e();
        assert_eq!(ring_mul(&e, &e).unwrap(), RingElement::one(GroupTag::Dihedral));
    }

    #[test]
    fn star_of_se_is_se() {
        let se = RingElement::dihedral_monomial(DihedralElement::s_pow_e(1), Scalar::one());
        assert_eq!(ring_star(&se), se);
    }

    #[test]
    fn projections_are_projections() {
        for j in 0..3 {
            let p = projection(j);
            assert!(is_projection(&p), "projection({j})");
        }
        assert!(is_projection(&projection2_alt()));
    }

    #[test]
    fn projection1_terms() {
        let p = projection(1);
        assert_eq!(p.coeff(&GroupElem::D(DihedralElement::IDENTITY)), Scalar::half());
        assert_eq!(p.coeff(&GroupElem::D(DihedralElement::E)), Scalar::half());
        assert_eq!(p.support_len(), 2);
    }

    #[test]
    fn alpha_on_generators() {
        let e = RingElement::e();
        let s_inv_e =
            RingElement::dihedral_monomial(DihedralElement::s_pow_e(-1), Scalar::one());
        assert_eq!(alpha_minus1(&e).unwrap(), s_inv_e);
        assert_eq!(alpha_minus1(&RingElement::s()).unwrap(), RingElement::s());
        let one = RingElement::one(GroupTag::Dihedral);
        assert_eq!(alpha_minus1(&one).unwrap(), one);
    }

    #[test]
    fn alpha_swaps_p1_p2() {
        assert_eq!(alpha_minus1(&projection(2)).unwrap(), projection(1));
        // alpha(P1) = (1 + S^-1 e)/2, the alternate convention for P2
        assert_eq!(alpha_minus1(&projection(1)).unwrap(), projection2_alt());
    }

    #[test]
    fn mismatched_tags_rejected() {
        assert!(ring_mul(&RingElement::s(), &RingElement::v()).is_err());
        assert!(ring_add(&RingElement::e(), &RingElement::u()).is_err());
    }

    #[test]
    fn unitary_checks() {
        assert!(is_unitary(&RingElement::s()));
        assert!(is_unitary(&RingElement::v()));
        assert!(is_unitary(&RingElement::one(GroupTag::Semidirect)));
        assert!(!is_unitary(&projection(1)));
    }

    #[test]
    fn json_roundtrip() {
        let x = ring_add(
            &projection(2),
            &RingElement::dihedral_monomial(
                DihedralElement::s_pow(-3),
                Scalar::i() * Scalar::from_ratio(2, 3),
            ),
        )
        .unwrap();
        let v = ring_to_json(&x);
        assert_eq!(ring_from_json(&v).unwrap(), x);

        let y = ring_mul(&RingElement::u(), &RingElement::v()).unwrap();
        assert_eq!(ring_from_json(&ring_to_json(&y)).unwrap(), y);
    }

    fn random_dihedral_elem() -> impl Strategy<Value = RingElement> {
        prop::collection::vec(
            ((-4i64..=4), any::<bool>(), (-5i64..=5), (-5i64..=5)),
            0..=4,
        )
        .prop_map(|terms| {
            terms
                .into_iter()
                .fold(RingElement::zero(GroupTag::Dihedral), |acc, (m, f, re, im)| {
                    let c = Scalar::from_int(re) + Scalar::i() * Scalar::from_int(im);
                    let t = RingElement::dihedral_monomial(DihedralElement::new(m, f), c);
                    ring_add(&acc, &t).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn star_involutive_antimultiplicative(
            x in random_dihedral_elem(),
            y in random_dihedral_elem(),
        ) {
            prop_assert_eq!(ring_star(&ring_star(&x)), x.clone());
            let lhs = ring_star(&ring_mul(&x, &y).unwrap());
            let rhs = ring_mul(&ring_star(&y), &ring_star(&x)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn alpha_is_star_homomorphism(
            x in random_dihedral_elem(),
            y in random_dihedral_elem(),
        ) {
            let ax = alpha_minus1(&x).unwrap();
            let ay = alpha_minus1(&y).unwrap();
            prop_assert_eq!(
                alpha_minus1(&ring_mul(&x, &y).unwrap()).unwrap(),
                ring_mul(&ax, &ay).unwrap()
            );
            prop_assert_eq!(alpha_minus1(&ring_star(&x)).unwrap(), ring_star(&ax));
        }

        // alpha^2 is conjugation by S^-1: x -> S^-1 x S.
        #[test]
        fn alpha_squared_is_conjugation(x in random_dihedral_elem()) {
            let twice = alpha_minus1(&alpha_minus1(&x).unwrap()).unwrap();
            let s = RingElement::s();
            let s_inv = ring_star(&s);
            let conj = ring_mul(&ring_mul(&s_inv, &x).unwrap(), &s).unwrap();
            prop_assert_eq!(twice, conj);
        }
    }
}
