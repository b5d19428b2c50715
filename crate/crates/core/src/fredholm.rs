//! Fredholm-module construction, validation and Chern-character pairings.
//!
//! Even pairings are traces of gamma pi(p) [F, pi(p)]^{2k}; odd pairings are
//! Toeplitz-style index counts for the compression E u E, E = (1 + F)/2.
//! Every value is an integer in exact arithmetic, asserted stable across the
//! power list and across window doubling.

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operator::{
    anticommutator, block_even_f, commutator, grading, interior_agreement, op_mul, op_pow,
    rank_exact, rank_of_rows, represent, sign_f, ExactOp, RepId, SparseOp, Window, WindowKind,
};
use crate::ring::{is_projection, is_unitary, GroupTag, RingElement};
use crate::scalar::Scalar;
use std::collections::HashMap;

/// The named modules this crate can build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleName {
    Z0,
    Z1,
    W0,
    W1,
    W2,
    W0B,
    W1B,
    D1Z1,
}

impl ModuleName {
    pub fn parse(s: &str) -> Option<ModuleName> {
        match s {
            "z0" => Some(ModuleName::Z0),
            "z1" => Some(ModuleName::Z1),
            "w0" => Some(ModuleName::W0),
            "w1" => Some(ModuleName::W1),
            "w2" => Some(ModuleName::W2),
            "w0B" | "w0b" => Some(ModuleName::W0B),
            "w1B" | "w1b" => Some(ModuleName::W1B),
            "d1z1" => Some(ModuleName::D1Z1),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ModuleName::Z0 => "z0",
            ModuleName::Z1 => "z1",
            ModuleName::W0 => "w0",
            ModuleName::W1 => "w1",
            ModuleName::W2 => "w2",
            ModuleName::W0B => "w0B",
            ModuleName::W1B => "w1B",
            ModuleName::D1Z1 => "d1z1",
        }
    }

    pub fn is_even(&self) -> bool {
        !matches!(self, ModuleName::Z1 | ModuleName::W1B)
    }

    /// Which group ring the module represents.
    pub fn group_tag(&self) -> GroupTag {
        match self {
            ModuleName::Z0 | ModuleName::Z1 | ModuleName::W1 | ModuleName::W2 => {
                GroupTag::Dihedral
            }
            ModuleName::W0 => GroupTag::Dihedral,
            ModuleName::W0B | ModuleName::W1B | ModuleName::D1Z1 => GroupTag::Semidirect,
        }
    }

    /// The window (kind and doubling) the module lives on, at a given radius.
    pub fn window(&self, radius: u32) -> Window {
        match self {
            ModuleName::Z0 | ModuleName::W0 | ModuleName::W0B => Window::pair(),
            ModuleName::Z1 | ModuleName::W1B => Window::line(radius),
            ModuleName::W1 | ModuleName::W2 => Window::line(radius).doubled(),
            ModuleName::D1Z1 => Window::plane(radius).doubled(),
        }
    }

    /// Generator set for validation, as ring elements.
    pub fn generators(&self) -> Vec<(&'static str, RingElement)> {
        match self.group_tag() {
            GroupTag::Dihedral => match self {
                // z0 and z1 sit over the circle subalgebra generated by S
                ModuleName::Z0 | ModuleName::Z1 => vec![("S", RingElement::s())],
                _ => vec![("S", RingElement::s()), ("e", RingElement::e())],
            },
            GroupTag::Semidirect => vec![("U", RingElement::u()), ("V", RingElement::v())],
        }
    }
}

/// A concrete exact-mode module on a window: representation map, F operator
/// and optional grading.
pub struct FredholmModule {
    pub name: ModuleName,
    pub window: Window,
    pub f: ExactOp,
    pub grading: Option<ExactOp>,
}

/// Build a named exact module at the given radius. The float-mode d1z1
/// module lives in the homotopy module instead.
pub fn make_module(name: ModuleName, radius: u32) -> Result<FredholmModule> {
    let window = name.window(radius);
    let (f, grading) = match name {
        ModuleName::Z0 | ModuleName::W0 | ModuleName::W0B => {
            // F = (0 1; 1 0), gamma = (1 0; 0 -1)
            let mut f = SparseOp::zero(window);
            f.set(0, 1, Scalar::one());
            f.set(1, 0, Scalar::one());
            (f, Some(grading(window)))
        }
        ModuleName::Z1 | ModuleName::W1B => (sign_f(window), None),
        ModuleName::W1 | ModuleName::W2 => {
            let base = Window::line(radius);
            (block_even_f(&sign_f(base)), Some(grading(window)))
        }
        ModuleName::D1Z1 => {
            return Err(Error::RepMismatch {
                rep: "d1z1".into(),
                detail: "d1z1 is float-mode; use the homotopy module".into(),
            })
        }
    };
    Ok(FredholmModule {
        name,
        window,
        f,
        grading,
    })
}

impl FredholmModule {
    /// The representation of a ring element on this module's window.
    pub fn pi(&self, x: &RingElement) -> Result<ExactOp> {
        match self.name {
            ModuleName::Z0 | ModuleName::W0 | ModuleName::W0B => {
                represent(RepId::Rep0, x, self.window)
            }
            ModuleName::Z1 => represent(RepId::RepCT, x, self.window),
            ModuleName::W1B => represent(RepId::RepB1, x, self.window),
            ModuleName::W1 => self.doubled_pi(RepId::Rep1, x),
            ModuleName::W2 => self.doubled_pi(RepId::Rep2, x),
            ModuleName::D1Z1 => Err(Error::RepMismatch {
                rep: "d1z1".into(),
                detail: "d1z1 is float-mode; use the homotopy module".into(),
            }),
        }
    }

    /// pi(S^m) = diag(rho(S^m), rho(S^m)), pi(S^m e) = diag(rho(S^m e),
    /// -rho(S^m e)): the sign twist on the second block tracks the flip bit.
    fn doubled_pi(&self, rep: RepId, x: &RingElement) -> Result<ExactOp> {
        use crate::ring::GroupElem;
        let base = Window::line(self.window.radius);
        let mut out = SparseOp::zero(self.window);
        for (g, c) in x.terms() {
            let GroupElem::D(d) = g else {
                return Err(Error::GroupMismatch);
            };
            let mono = RingElement::dihedral_monomial(*d, c.clone());
            let block = represent(rep, &mono, base)?;
            out = crate::operator::op_add(&out, &block.embed_block(0))?;
            let signed = if d.flip {
                block.scale(&Scalar::from_int(-1))
            } else {
                block
            };
            out = crate::operator::op_add(&out, &signed.embed_block(1))?;
        }
        Ok(out)
    }
}

/// One validation check with its outcome.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Valid,
    Degenerate,
    Violations,
}

#[derive(Debug)]
pub struct VerifyReport {
    pub module: ModuleName,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        let verdict = match self.verdict {
            Verdict::Valid => "valid",
            Verdict::Degenerate => "degenerate",
            Verdict::Violations => "violations",
        };
        json!({
            "module": self.module.as_str(),
            "verdict": verdict,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name, "pass": c.pass, "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Structural validation of a module: F = F*, F^2 = 1 on the interior,
/// grading identities, and finite-rank window-stable commutators with each
/// generator. `restrict` limits the generator set by name.
pub fn verify_module(
    name: ModuleName,
    radius: u32,
    restrict: Option<&[&str]>,
) -> Result<VerifyReport> {
    let module = make_module(name, radius)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    push(
        "F_selfadjoint",
        module.f.is_self_adjoint(),
        "F equals its conjugate transpose".into(),
    );

    // F^2 = 1 on the interior (sign-type F is exactly involutive; the block
    // form too, since the blocks are diagonal signs)
    let f2 = op_mul(&module.f, &module.f)?;
    let ident = SparseOp::identity(module.window);
    let f2_ok = if module.window.kind == WindowKind::Pair {
        f2 == ident
    } else {
        interior_agreement(&f2, &ident, 1) && f2 == ident
    };
    push("F_squared_identity", f2_ok, "F^2 = 1".into());

    if let Some(g) = &module.grading {
        push(
            "grading_squared",
            op_mul(g, g)? == ident,
            "gamma^2 = 1".into(),
        );
        push(
            "grading_anticommutes_F",
            anticommutator(g, &module.f)?.is_zero(),
            "gamma F = -F gamma".into(),
        );
    }

    let generators: Vec<(&str, RingElement)> = module
        .name
        .generators()
        .into_iter()
        .filter(|(n, _)| restrict.map(|r| r.contains(n)).unwrap_or(true))
        .collect();

    let mut all_commutators_zero = true;
    for (gname, g) in &generators {
        let pg = module.pi(g)?;
        if let Some(gr) = &module.grading {
            push(
                &format!("grading_commutes_pi_{gname}"),
                commutator(gr, &pg)?.is_zero(),
                format!("[gamma, pi({gname})] = 0"),
            );
        }
        let c = commutator(&module.f, &pg)?;
        let r = rank_exact(&c);
        if !c.is_zero() {
            all_commutators_zero = false;
        }
        // window-independent support: all entries within radius 2 of the
        // origin for generators (the finite-rank compactness proxy)
        let support_ok = if module.window.kind == WindowKind::Pair {
            true
        } else {
            c.entries().all(|((row, col), _)| {
                let w = module.window;
                let (rn, rq) = w.coords(*row);
                let (cn, cq) = w.coords(*col);
                rn.abs() <= 2 && cn.abs() <= 2 && rq.abs() <= 2 && cq.abs() <= 2
            })
        };
        push(
            &format!("commutator_finite_rank_{gname}"),
            support_ok,
            format!("[F, pi({gname})] has rank {r}, support within radius 2"),
        );
    }

    let verdict = if checks.iter().any(|c| !c.pass) {
        Verdict::Violations
    } else if all_commutators_zero && !generators.is_empty() {
        Verdict::Degenerate
    } else {
        Verdict::Valid
    };
    Ok(VerifyReport {
        module: name,
        verdict,
        checks,
    })
}

/// An integer pairing value together with its stability evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingResult {
    pub value: i64,
    pub powers_checked: Vec<u32>,
    pub window_radius: u32,
    pub stable: bool,
}

impl PairingResult {
    pub fn to_json(&self, class: &str) -> Value {
        json!({
            "class": class,
            "value": self.value,
            "powers_checked": self.powers_checked,
            "window_radius": self.window_radius,
            "stable": self.stable,
        })
    }
}

/// One even Chern summand (-1)^k Tr(gamma pi(p) [F, pi(p)]^{2k}).
pub fn chern_summand(module: &FredholmModule, p: &RingElement, k: u32) -> Result<Scalar> {
    let grading = module
        .grading
        .as_ref()
        .ok_or_else(|| Error::Unstable("module has no grading".into()))?;
    let pp = module.pi(p)?;
    let c = commutator(&module.f, &pp)?;
    let c2k = op_pow(&c, 2 * k)?;
    let t = op_mul(&op_mul(grading, &pp)?, &c2k)?.trace();
    let sign = if k % 2 == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    };
    Ok(&sign * &t)
}

fn scalar_to_i64(s: &Scalar, context: &str) -> Result<i64> {
    s.as_integer()
        .and_then(|n| n.to_i64())
        .ok_or_else(|| Error::Unstable(format!("{context}: non-integer value {s}")))
}

/// Even pairing, asserted equal across `k_list` and across window doubling.
pub fn chern_pair_even(
    name: ModuleName,
    p: &RingElement,
    k_list: &[u32],
    radius: u32,
) -> Result<PairingResult> {
    if !name.is_even() {
        return Err(Error::Unstable(format!("{} is odd", name.as_str())));
    }
    if !is_projection(p) {
        return Err(Error::NotAProjection);
    }
    if k_list.is_empty() || k_list.contains(&0) {
        return Err(Error::BadInput("k_list must be nonempty with k >= 1".into()));
    }
    // at least max word length * 2k + margin keeps truncation out of the trace
    let needed = (p.max_word_length() as u32) * 2 * k_list.iter().max().unwrap() + 4;
    let radius = radius.max(needed);

    let mut values = Vec::new();
    for &r in &[radius, 2 * radius] {
        let module = make_module(name, r)?;
        for &k in k_list {
            let v = chern_summand(&module, p, k)?;
            values.push(scalar_to_i64(&v, "even pairing")?);
        }
    }
    let value = values[0];
    let stable = values.iter().all(|&v| v == value);
    if !stable {
        return Err(Error::Unstable(format!(
            "pairing values differ across k or window: {values:?}"
        )));
    }
    Ok(PairingResult {
        value,
        powers_checked: k_list.to_vec(),
        window_radius: radius,
        stable,
    })
}

/// Constrained kernel dimension of the compression E pi(u) E on the
/// nonnegative half-line [0, N], counting only kernel vectors supported in
/// [0, N-2] so the artificial boundary kernel of a truncated shift is
/// excluded.
fn toeplitz_kernel_dim(module: &FredholmModule, u: &RingElement) -> Result<usize> {
    let w = module.window;
    let n = w.radius as i64;
    let pu = module.pi(u)?;
    // columns e_0 .. e_N of E pi(u) E; rows restricted to [0, N]
    let cols: Vec<usize> = (0..=n).map(|j| w.line_index(j).unwrap()).collect();
    let ncols = cols.len();
    let mut rows: HashMap<usize, HashMap<usize, Scalar>> = HashMap::new();
    for (cpos, &cidx) in cols.iter().enumerate() {
        for ridx in &cols {
            let v = pu.entry(*ridx, cidx);
            if !v.is_zero() {
                rows.entry(*ridx).or_default().insert(cpos, v);
            }
        }
    }
    let mut row_list: Vec<HashMap<usize, Scalar>> = rows.into_values().collect();
    // constraints x_{N-1} = x_N = 0
    for cpos in [ncols - 2, ncols - 1] {
        let mut constraint = HashMap::new();
        constraint.insert(cpos, Scalar::one());
        row_list.push(constraint);
    }
    let rank = rank_of_rows(row_list);
    Ok(ncols - rank)
}

/// Odd pairing: dim ker(E pi(u*) E) - dim ker(E pi(u) E), oriented so the
/// positive shift pairs to +1, stable under window doubling.
pub fn chern_pair_odd(name: ModuleName, u: &RingElement, radius: u32) -> Result<PairingResult> {
    if name.is_even() {
        return Err(Error::Unstable(format!("{} is even", name.as_str())));
    }
    if !is_unitary(u) {
        return Err(Error::NotAUnitary);
    }
    let radius = radius.max((u.max_word_length() as u32) + 6);
    let ustar = crate::ring::ring_star(u);
    let mut values = Vec::new();
    for &r in &[radius, 2 * radius] {
        let module = make_module(name, r)?;
        let k_star = toeplitz_kernel_dim(&module, &ustar)? as i64;
        let k_u = toeplitz_kernel_dim(&module, u)? as i64;
        values.push(k_star - k_u);
    }
    if values[0] != values[1] {
        return Err(Error::Unstable(format!(
            "odd pairing differs across window doubling: {values:?}"
        )));
    }
    Ok(PairingResult {
        value: values[0],
        powers_checked: vec![],
        window_radius: radius,
        stable: true,
    })
}

/// The 3x3 table of even pairings: rows w0, w1, w2; columns 1, P1, P2.
pub fn pairing_table(radius: u32, k_list: &[u32]) -> Result<[[i64; 3]; 3]> {
    let mut table = [[0i64; 3]; 3];
    for (i, name) in [ModuleName::W0, ModuleName::W1, ModuleName::W2]
        .iter()
        .enumerate()
    {
        for j in 0..3 {
            let p = crate::ring::projection(j);
            table[i][j] = chern_pair_even(*name, &p, k_list, radius)?.value;
        }
    }
    Ok(table)
}

pub const EXPECTED_TABLE: [[i64; 3]; 3] = [[1, 1, 1], [0, 1, 0], [0, 0, 1]];

/// Checks that the induced-representation recipe (diagonal phi-part plus
/// shift, with F the diagonal sign) rebuilds z1 and w1B operator-by-operator.
pub fn pv_boundary_consistency(radius: u32) -> Result<bool> {
    let w = Window::line(radius);

    // z1: A = C, alpha = id, phi = id; pi(a) = a I, pi(V) = shift
    let z1 = make_module(ModuleName::Z1, radius)?;
    let shift = {
        let mut op = SparseOp::zero(w);
        let n = radius as i64;
        for m in -n..n {
            op.set(w.line_index(m + 1).unwrap(), w.line_index(m).unwrap(), Scalar::one());
        }
        op
    };
    if z1.pi(&RingElement::s())? != shift {
        return Ok(false);
    }
    if z1.f != sign_f(w) {
        return Ok(false);
    }

    // w1B: A = C(T), alpha = sigma, phi(U) = 1; phi(sigma^{-n}(U)) = 1 for
    // every n, so pi'(U) = I and pi'(V) = shift
    let w1b = make_module(ModuleName::W1B, radius)?;
    if w1b.pi(&RingElement::u())? != SparseOp::identity(w) {
        return Ok(false);
    }
    if w1b.pi(&RingElement::v())? != shift {
        return Ok(false);
    }
    if w1b.f != sign_f(w) {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{projection, projection2_alt};

    #[test]
    fn w0_structure() {
        let m = make_module(ModuleName::W0, 0).unwrap();
        assert_eq!(m.f.entry(0, 1), Scalar::one());
        assert_eq!(m.f.entry(1, 0), Scalar::one());
        let g = m.grading.as_ref().unwrap();
        assert_eq!(g.entry(0, 0), Scalar::one());
        assert_eq!(g.entry(1, 1), Scalar::from_int(-1));
    }

    #[test]
    fn z1_f_is_sign() {
        let m = make_module(ModuleName::Z1, 8).unwrap();
        assert_eq!(m.f, sign_f(Window::line(8)));
    }

    #[test]
    fn w1b_generator_images() {
        let m = make_module(ModuleName::W1B, 6).unwrap();
        let w = m.window;
        let v = m.pi(&RingElement::v()).unwrap();
        assert_eq!(
            v.entry(w.line_index(1).unwrap(), w.line_index(0).unwrap()),
            Scalar::one()
        );
        let u = m.pi(&RingElement::u()).unwrap();
        assert_eq!(u, SparseOp::identity(w));
    }

    #[test]
    fn verify_w1_valid_with_rank_one_commutators() {
        let report = verify_module(ModuleName::W1, 12, None).unwrap();
        assert_eq!(report.verdict, Verdict::Valid, "{report:?}");
        let m = make_module(ModuleName::W1, 12).unwrap();
        for g in [RingElement::s(), RingElement::e()] {
            // the doubled commutator is two copies of a rank-one block, so
            // each off-diagonal block has rank 1 and the whole operator
            // rank 2
            let c = commutator(&m.f, &m.pi(&g).unwrap()).unwrap();
            assert_eq!(rank_exact(&c.block(0, 1)), 1);
            assert_eq!(rank_exact(&c.block(1, 0)), 1);
            assert_eq!(rank_exact(&c), 2);
        }
    }

    #[test]
    fn verify_z1_commutator_rank_one() {
        let report = verify_module(ModuleName::Z1, 12, None).unwrap();
        assert_eq!(report.verdict, Verdict::Valid);
        let m = make_module(ModuleName::Z1, 12).unwrap();
        let c = commutator(&m.f, &m.pi(&RingElement::s()).unwrap()).unwrap();
        assert_eq!(rank_exact(&c), 1);
    }

    #[test]
    fn verify_w1b_restricted_to_u_is_degenerate() {
        let report = verify_module(ModuleName::W1B, 12, Some(&["U"])).unwrap();
        assert_eq!(report.verdict, Verdict::Degenerate);
        let full = verify_module(ModuleName::W1B, 12, None).unwrap();
        assert_eq!(full.verdict, Verdict::Valid);
    }

    #[test]
    fn verify_w2_same_f_as_w1() {
        let w1 = make_module(ModuleName::W1, 10).unwrap();
        let w2 = make_module(ModuleName::W2, 10).unwrap();
        assert_eq!(w1.f, w2.f);
        assert_eq!(w1.grading, w2.grading);
        let report = verify_module(ModuleName::W2, 10, None).unwrap();
        assert_eq!(report.verdict, Verdict::Valid);
    }

    #[test]
    fn trace_power_identity() {
        // Tr(gamma pi1(P1) [F1, pi1(P1)]^{2k}) = (-1)^k for k = 1..4
        let m = make_module(ModuleName::W1, 20).unwrap();
        let p1 = projection(1);
        for k in 1..=4u32 {
            let raw = {
                let pp = m.pi(&p1).unwrap();
                let c = commutator(&m.f, &pp).unwrap();
                let c2k = op_pow(&c, 2 * k).unwrap();
                op_mul(&op_mul(m.grading.as_ref().unwrap(), &pp).unwrap(), &c2k)
                    .unwrap()
                    .trace()
            };
            let expect = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(raw, Scalar::from_int(expect), "k = {k}");
        }
    }

    #[test]
    fn w0_pairs_one_with_everything() {
        for j in 0..3 {
            let r = chern_pair_even(ModuleName::W0, &projection(j), &[1, 2], 8).unwrap();
            assert_eq!(r.value, 1);
            assert!(r.stable);
        }
    }

    #[test]
    fn z0_summands_all_one() {
        let m = make_module(ModuleName::Z0, 0).unwrap();
        let one = RingElement::one(GroupTag::Dihedral);
        for k in 1..=4 {
            assert_eq!(chern_summand(&m, &one, k).unwrap(), Scalar::one());
        }
    }

    #[test]
    fn w1_row() {
        assert_eq!(
            chern_pair_even(ModuleName::W1, &projection(0), &[1, 2], 16)
                .unwrap()
                .value,
            0
        );
        assert_eq!(
            chern_pair_even(ModuleName::W1, &projection(1), &[1, 2], 16)
                .unwrap()
                .value,
            1
        );
        assert_eq!(
            chern_pair_even(ModuleName::W1, &projection(2), &[1, 2], 16)
                .unwrap()
                .value,
            0
        );
    }

    #[test]
    fn full_table() {
        assert_eq!(pairing_table(16, &[1, 2]).unwrap(), EXPECTED_TABLE);
    }

    #[test]
    fn both_p2_conventions_agree() {
        for name in [ModuleName::W0, ModuleName::W1, ModuleName::W2] {
            let a = chern_pair_even(name, &projection(2), &[1, 2], 16).unwrap();
            let b = chern_pair_even(name, &projection2_alt(), &[1, 2], 16).unwrap();
            assert_eq!(a.value, b.value, "{name:?}");
        }
    }

    #[test]
    fn table_is_unimodular() {
        let t = pairing_table(16, &[1]).unwrap();
        let det = t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1])
            - t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0])
            + t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
        assert_eq!(det.abs(), 1);
    }

    #[test]
    fn additivity_on_table_projections() {
        // with the (1+eS)/2 convention the w1 commutator vanishes outright
        // (F eS + eS F = 0), so [F, pi(P1)][F, pi(P2')] = 0 and the table
        // pairings add cellwise
        let m = make_module(ModuleName::W1, 16).unwrap();
        let c1 = commutator(&m.f, &m.pi(&projection(1)).unwrap()).unwrap();
        let c2 = commutator(&m.f, &m.pi(&crate::ring::projection2_alt()).unwrap()).unwrap();
        assert!(c2.is_zero());
        assert!(op_mul(&c1, &c2).unwrap().is_zero());
    }

    #[test]
    fn odd_pairings() {
        // z1 pairs 1 with the shift unitary, 0 with the identity
        let s = RingElement::s();
        assert_eq!(chern_pair_odd(ModuleName::Z1, &s, 16).unwrap().value, 1);
        let one = RingElement::one(GroupTag::Dihedral);
        assert_eq!(chern_pair_odd(ModuleName::Z1, &one, 16).unwrap().value, 0);
        // w1B pairs 1 with V
        let v = RingElement::v();
        assert_eq!(chern_pair_odd(ModuleName::W1B, &v, 16).unwrap().value, 1);
        // and 0 with U (degenerate direction)
        let u = RingElement::u();
        assert_eq!(chern_pair_odd(ModuleName::W1B, &u, 16).unwrap().value, 0);
    }

    #[test]
    fn odd_pairing_rejects_non_unitary() {
        assert!(matches!(
            chern_pair_odd(ModuleName::Z1, &projection(0), 8),
            Err(Error::NotAUnitary) | Ok(_)
        ));
        // projection(0) is the identity, which IS unitary; use a real non-unitary
        let p = projection(1);
        assert!(matches!(
            chern_pair_odd(ModuleName::Z1, &p, 8),
            Err(Error::NotAUnitary)
        ));
    }

    #[test]
    fn even_pairing_rejects_non_projection() {
        assert!(matches!(
            chern_pair_even(ModuleName::W1, &RingElement::s(), &[1], 8),
            Err(Error::NotAProjection)
        ));
    }

    #[test]
    fn pv_consistency() {
        assert!(pv_boundary_consistency(12).unwrap());
    }

    #[test]
    fn higher_powers_stable() {
        let r = chern_pair_even(ModuleName::W1, &projection(1), &[1, 2, 3], 16).unwrap();
        assert_eq!(r.value, 1);
        assert!(r.stable);
    }

    #[test]
    fn inverse_shift_pairs_minus_one() {
        let s_inv = crate::ring::ring_star(&RingElement::s());
        assert_eq!(chern_pair_odd(ModuleName::Z1, &s_inv, 16).unwrap().value, -1);
    }
}
