//! The plane-lattice homotopy on the crossed-product side.
//!
//! On l²(Z²) the phase operator F₀ multiplies e_{p,q} by the unit complex
//! number (p+iq)/|p+iq|, and the family F_t deforms it to an operator
//! commuting with the twisted vertical shift everywhere off the p = 0
//! column. Entries are irrational, so this module runs in double precision
//! with explicit tolerances; the only integer outputs are rank-type counts
//! on the residual column, where the entries are Gaussian integers.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operator::{
    block_even_general, commutator, grading, op_mul, op_sub, represent, ExactOp, FloatOp,
    RepId, SparseOp, Window, WindowKind,
};
use crate::ring::RingElement;

/// Diagonal unit-phase operator F_t on a plain plane window.
#[derive(Clone, Debug)]
pub struct PhaseOperator {
    pub t: f64,
    pub op: FloatOp,
}

fn sign(n: i64) -> f64 {
    if n >= 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_plane(w: &Window) -> Result<()> {
    if w.kind != WindowKind::Plane || w.doubled {
        return Err(Error::WindowMismatch(
            "phase operators need a plain plane window".into(),
        ));
    }
    Ok(())
}

/// F₀ e_{p,q} = (p+iq)/(p²+q²)^{1/2}, and e_{0,0} at the origin.
pub fn build_f0(w: Window) -> Result<PhaseOperator> {
    check_plane(&w)?;
    let mut op = SparseOp::zero(w);
    for idx in 0..w.dim() {
        let (p, q) = w.coords(idx);
        let v = if p == 0 && q == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            let norm = ((p * p + q * q) as f64).sqrt();
            Complex64::new(p as f64 / norm, q as f64 / norm)
        };
        op.set(idx, idx, v);
    }
    Ok(PhaseOperator { t: 0.0, op })
}

/// F_t: sign(p) on the q = 0 axis; (p+i(1-t)q)/(p²+(1-t)²q²)^{1/2} off it.
/// The 0/0 at (0, q≠0, t = 1) is filled with the t → 1 limit i·sign(q).
pub fn build_ft(t: f64, w: Window) -> Result<PhaseOperator> {
    check_plane(&w)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::BadInput(format!("t = {t} outside [0, 1]")));
    }
    let s = 1.0 - t;
    let mut op = SparseOp::zero(w);
    for idx in 0..w.dim() {
        let (p, q) = w.coords(idx);
        let v = if q == 0 {
            Complex64::new(sign(p), 0.0)
        } else if p == 0 && t == 1.0 {
            Complex64::new(0.0, sign(q))
        } else {
            let norm = ((p * p) as f64 + s * s * (q * q) as f64).sqrt();
            Complex64::new(p as f64 / norm, s * q as f64 / norm)
        };
        op.set(idx, idx, v);
    }
    Ok(PhaseOperator { t, op })
}

impl PhaseOperator {
    /// Max deviation of a diagonal entry from unit modulus.
    pub fn unit_modulus_defect(&self) -> f64 {
        self.op
            .entries()
            .map(|(_, v)| (v.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn exact_to_float(op: &ExactOp) -> FloatOp {
    let mut out = SparseOp::zero(op.window);
    for ((r, c), v) in op.entries() {
        let (re, im) = v.to_f64_pair();
        out.set(*r, *c, Complex64::new(re, im));
    }
    out
}

/// pi(V) e_{p,q} = e_{p+1,q}, pi(U) e_{p,q} = e_{p,q+(-1)^p}, extended
/// linearly and compressed at the window boundary, in float mode.
pub fn rep2d(x: &RingElement, w: Window) -> Result<FloatOp> {
    Ok(exact_to_float(&represent(RepId::RepB2D, x, w)?))
}

/// The doubled even operator (0, F_t; F_t*, 0) with grading diag(1, -1),
/// carried by pi ⊕ pi.
pub struct DoubledModule {
    pub t: f64,
    pub f: FloatOp,
    pub grading: FloatOp,
}

pub fn doubled_module(t: f64, w: Window) -> Result<DoubledModule> {
    let phase = build_ft(t, w)?;
    let f = block_even_general(&phase.op);
    let grading = grading::<Complex64>(w.doubled());
    Ok(DoubledModule { t, f, grading })
}

/// pi ⊕ pi on the doubled plane window.
pub fn doubled_rep2d(x: &RingElement, w: Window) -> Result<FloatOp> {
    let single = rep2d(x, w)?;
    let top = single.embed_block(0);
    let bottom = single.embed_block(1);
    crate::operator::op_add(&top, &bottom)
}

/// Max entry of `op` over entries whose row or column lies outside the
/// square of the given radius.
fn tail_max(op: &FloatOp, radius: i64) -> f64 {
    let w = op.window;
    op.entries()
        .filter(|((r, c), _)| {
            let (rp, rq) = w.coords(*r);
            let (cp, cq) = w.coords(*c);
            rp.abs().max(rq.abs()) > radius || cp.abs().max(cq.abs()) > radius
        })
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max)
}

/// One row of the tail-decay table: max commutator entry outside radius R.
#[derive(Clone, Debug)]
pub struct TailRow {
    pub radius: u32,
    pub v_tail: f64,
    pub u_tail: f64,
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub window_radius: u32,
    pub grid: Vec<f64>,
    pub tolerance: f64,
    /// max over the grid of max |F_t F_t* - I| entry
    pub unitarity_defect: f64,
    /// max over the grid of max |F~_t - F~_t*| entry
    pub selfadjoint_defect: f64,
    /// max over the grid of max |gamma F~_t + F~_t gamma| entry
    pub grading_defect: f64,
    /// max |[F_1, pi(U)]| entry over columns with p != 0
    pub endpoint_offaxis_commutator: f64,
    /// largest |q| carrying a nonzero entry of [F_1, pi(U)] on p = 0
    pub endpoint_axis_support: i64,
    /// nonzero columns of that residual (its entries hit distinct rows, so
    /// this is its rank)
    pub endpoint_axis_rank: usize,
    /// max entry change between consecutive grid points
    pub max_step_delta: f64,
    /// Lipschitz-style bound 2·radius/steps the deltas are held to
    pub step_delta_bound: f64,
    pub tail_decay: Vec<TailRow>,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Evaluate the homotopy on the uniform grid {0, 1/steps, ..., 1} and
/// collect every defect the deformation argument relies on. Tolerance
/// violations are reported, not thrown.
pub fn homotopy_report(steps: u32, w: Window, tol: f64) -> Result<HomotopyReport> {
    check_plane(&w)?;
    if steps < 2 {
        return Err(Error::BadInput("need at least 2 grid steps".into()));
    }
    let u = RingElement::u();
    let v = RingElement::v();
    let pi_u = rep2d(&u, w)?;
    let pi_v = rep2d(&v, w)?;
    let gamma = grading::<Complex64>(w.doubled());
    let ident = SparseOp::<Complex64>::identity(w);

    let mut grid = Vec::new();
    let mut unitarity: f64 = 0.0;
    let mut selfadj: f64 = 0.0;
    let mut graddef: f64 = 0.0;
    let mut max_step_delta: f64 = 0.0;
    let mut prev: Option<FloatOp> = None;
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        grid.push(t);
        let phase = build_ft(t, w)?;
        let ff = op_mul(&phase.op, &phase.op.adjoint())?;
        unitarity = unitarity.max(op_sub(&ff, &ident)?.max_abs_entry());
        let doubled = block_even_general(&phase.op);
        selfadj = selfadj.max(op_sub(&doubled, &doubled.adjoint())?.max_abs_entry());
        graddef = graddef.max(
            crate::operator::anticommutator(&gamma, &doubled)?.max_abs_entry(),
        );
        if let Some(p) = &prev {
            max_step_delta = max_step_delta.max(op_sub(&phase.op, p)?.max_abs_entry());
        }
        prev = Some(phase.op);
    }

    // endpoint residual structure
    let f1 = build_ft(1.0, w)?;
    let comm_u = commutator(&f1.op, &pi_u)?;
    let mut offaxis: f64 = 0.0;
    let mut axis_support: i64 = 0;
    let mut axis_cols: std::collections::BTreeSet<usize> = Default::default();
    for ((r, c), val) in comm_u.entries() {
        let (cp, cq) = w.coords(*c);
        let (rp, rq) = w.coords(*r);
        if val.norm() <= 1e-15 {
            continue;
        }
        if cp != 0 {
            offaxis = offaxis.max(val.norm());
        } else {
            axis_support = axis_support.max(cq.abs()).max(rq.abs());
            axis_cols.insert(*c);
        }
        let _ = (rp, rq);
    }

    // tail decay of the F_0-side commutators as the excluded radius grows
    let f0 = build_f0(w)?;
    let comm_v0 = commutator(&f0.op, &pi_v)?;
    let comm_u0 = commutator(&f0.op, &pi_u)?;
    let mut tail_decay = Vec::new();
    let mut radius = w.radius / 8;
    while radius >= 2 && radius <= w.radius / 2 {
        tail_decay.push(TailRow {
            radius,
            v_tail: tail_max(&comm_v0, radius as i64),
            u_tail: tail_max(&comm_u0, radius as i64),
        });
        radius *= 2;
    }

    let step_delta_bound = 2.0_f64.min(2.0 * w.radius as f64 / steps as f64);
    let mut failures = Vec::new();
    if unitarity > tol {
        failures.push(format!("unitarity defect {unitarity:.3e} > {tol:.1e}"));
    }
    if selfadj > tol {
        failures.push(format!("self-adjointness defect {selfadj:.3e}"));
    }
    if graddef > tol {
        failures.push(format!("grading anticommutation defect {graddef:.3e}"));
    }
    if offaxis > 1e-12 {
        failures.push(format!("endpoint off-axis commutator {offaxis:.3e}"));
    }
    if axis_support > 1 {
        failures.push(format!("endpoint residual reaches |q| = {axis_support}"));
    }
    if max_step_delta > step_delta_bound {
        failures.push(format!(
            "grid step delta {max_step_delta:.3e} exceeds bound {step_delta_bound:.3e}"
        ));
    }
    for pair in tail_decay.windows(2) {
        if pair[1].v_tail > 1.2 * pair[0].v_tail / 2.0 {
            failures.push(format!(
                "V-commutator tail fails to halve: {:.3e} at R={} vs {:.3e} at R={}",
                pair[1].v_tail, pair[1].radius, pair[0].v_tail, pair[0].radius
            ));
        }
        if pair[1].u_tail > 1.2 * pair[0].u_tail / 2.0 {
            failures.push(format!(
                "U-commutator tail fails to halve: {:.3e} at R={} vs {:.3e} at R={}",
                pair[1].u_tail, pair[1].radius, pair[0].u_tail, pair[0].radius
            ));
        }
    }

    Ok(HomotopyReport {
        window_radius: w.radius,
        grid,
        tolerance: tol,
        unitarity_defect: unitarity,
        selfadjoint_defect: selfadj,
        grading_defect: graddef,
        endpoint_offaxis_commutator: offaxis,
        endpoint_axis_support: axis_support,
        endpoint_axis_rank: axis_cols.len(),
        max_step_delta,
        step_delta_bound,
        tail_decay,
        pass: failures.is_empty(),
        failures,
    })
}

impl HomotopyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "window_radius": self.window_radius,
            "grid": self.grid,
            "tolerance": self.tolerance,
            "unitarity_defect": self.unitarity_defect,
            "selfadjoint_defect": self.selfadjoint_defect,
            "grading_defect": self.grading_defect,
            "endpoint_offaxis_commutator": self.endpoint_offaxis_commutator,
            "endpoint_axis_support": self.endpoint_axis_support,
            "endpoint_axis_rank": self.endpoint_axis_rank,
            "max_step_delta": self.max_step_delta,
            "step_delta_bound": self.step_delta_bound,
            "tail_decay": self.tail_decay.iter().map(|row| json!({
                "radius": row.radius,
                "v_tail": row.v_tail,
                "u_tail": row.u_tail,
            })).collect::<Vec<_>>(),
            "pass": self.pass,
            "failures": self.failures,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a.re - re).abs() < TOL && (a.im - im).abs() < TOL
    }

    #[test]
    fn f0_values() {
        let w = Window::plane(6);
        let f0 = build_f0(w).unwrap();
        let at = |p: i64, q: i64| {
            let idx = w.plane_index(p, q).unwrap();
            f0.op.entry(idx, idx)
        };
        assert!(close(at(3, 4), 0.6, 0.8));
        assert!(close(at(0, 0), 1.0, 0.0));
        assert!(close(at(-5, 0), -1.0, 0.0));
        assert!(close(at(0, 2), 0.0, 1.0));
        assert!(f0.unit_modulus_defect() < 1e-12);
    }

    #[test]
    fn ft_branches() {
        let w = Window::plane(6);
        for &(t, p, q, re, im) in &[
            // q = 0 axis: sign(p) for every t, with sign(0) = +1
            (0.5, 4, 0, 1.0, 0.0),
            (0.5, -4, 0, -1.0, 0.0),
            (1.0, 0, 0, 1.0, 0.0),
            // generic branch at t = 1/2: (p + iq/2)/|..|
            (0.5, 3, 4, 3.0 / 13.0_f64.sqrt(), 2.0 / 13.0_f64.sqrt()),
            // t = 1 limit on the p = 0 column
            (1.0, 0, 3, 0.0, 1.0),
            (1.0, 0, -3, 0.0, -1.0),
            // t = 1 elsewhere collapses to sign(p)
            (1.0, 2, 5, 1.0, 0.0),
            (1.0, -2, 5, -1.0, 0.0),
        ] {
            let ft = build_ft(t, w).unwrap();
            let idx = w.plane_index(p, q).unwrap();
            assert!(
                close(ft.op.entry(idx, idx), re, im),
                "t={t} at ({p},{q}): {:?}",
                ft.op.entry(idx, idx)
            );
        }
        assert!(build_ft(-0.1, w).is_err());
        assert!(build_ft(1.1, w).is_err());
    }

    #[test]
    fn ft_at_zero_matches_f0() {
        let w = Window::plane(8);
        let f0 = build_f0(w).unwrap();
        let ft = build_ft(0.0, w).unwrap();
        assert!(op_sub(&f0.op, &ft.op).unwrap().max_abs_entry() < 1e-12);
    }

    #[test]
    fn rep2d_generators_and_relation() {
        let w = Window::plane(5);
        let u = rep2d(&RingElement::u(), w).unwrap();
        let at = |op: &FloatOp, rp: i64, rq: i64, cp: i64, cq: i64| {
            op.entry(
                w.plane_index(rp, rq).unwrap(),
                w.plane_index(cp, cq).unwrap(),
            )
        };
        assert!(close(at(&u, 0, 1, 0, 0), 1.0, 0.0));
        assert!(close(at(&u, 1, -1, 1, 0), 1.0, 0.0));
        // VU = U*V away from the boundary
        let vu = rep2d(
            &crate::ring::ring_mul(&RingElement::v(), &RingElement::u()).unwrap(),
            w,
        )
        .unwrap();
        let ustar_v = rep2d(
            &crate::ring::ring_mul(
                &crate::ring::ring_star(&RingElement::u()),
                &RingElement::v(),
            )
            .unwrap(),
            w,
        )
        .unwrap();
        assert!(op_sub(&vu, &ustar_v).unwrap().max_abs_entry() < 1e-12);
    }

    #[test]
    fn endpoint_commutator_structure() {
        let w = Window::plane(10);
        let f1 = build_ft(1.0, w).unwrap();
        let pi_u = rep2d(&RingElement::u(), w).unwrap();
        let comm = commutator(&f1.op, &pi_u).unwrap();
        for ((r, c), v) in comm.entries() {
            if v.norm() <= 1e-15 {
                continue;
            }
            let (cp, cq) = w.coords(*c);
            let (rp, _) = w.coords(*r);
            assert_eq!(cp, 0, "nonzero entry off the p = 0 column");
            assert_eq!(rp, 0);
            assert!(cq.abs() <= 1, "residual at |q| = {}", cq.abs());
        }
        // the residual has exactly two nonzero columns: q = -1 and q = 0
        let cols: std::collections::BTreeSet<usize> = comm
            .entries()
            .filter(|(_, v)| v.norm() > 1e-15)
            .map(|((_, c), _)| *c)
            .collect();
        assert_eq!(cols.len(), 2);
    }

    #[test]
    fn doubled_module_checks() {
        let w = Window::plane(6);
        let m = doubled_module(0.3, w).unwrap();
        assert!(op_sub(&m.f, &m.f.adjoint()).unwrap().max_abs_entry() < 1e-12);
        let sq = op_mul(&m.f, &m.f).unwrap();
        let ident = SparseOp::<Complex64>::identity(w.doubled());
        assert!(op_sub(&sq, &ident).unwrap().max_abs_entry() < 1e-9);
        assert!(
            crate::operator::anticommutator(&m.grading, &m.f)
                .unwrap()
                .max_abs_entry()
                < 1e-12
        );
        // pi ⊕ pi commutes with the grading
        let pi = doubled_rep2d(&RingElement::v(), w).unwrap();
        assert!(commutator(&m.grading, &pi).unwrap().max_abs_entry() < 1e-12);
    }

    #[test]
    fn report_passes_at_modest_window() {
        let report = homotopy_report(10, Window::plane(32), 1e-9).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);
        assert_eq!(report.grid.len(), 11);
        assert_eq!(report.endpoint_axis_rank, 2);
        assert_eq!(report.endpoint_axis_support, 1);
        assert!(report.endpoint_offaxis_commutator <= 1e-12);
        assert_eq!(report.tail_decay.len(), 3);
        let v: Vec<f64> = report.tail_decay.iter().map(|r| r.v_tail).collect();
        assert!(v[1] <= 1.2 * v[0] / 2.0 && v[2] <= 1.2 * v[1] / 2.0, "{v:?}");
        let json = report.to_json();
        assert_eq!(json["pass"], true);
    }

    #[test]
    fn report_rejects_bad_input() {
        assert!(homotopy_report(1, Window::plane(8), 1e-9).is_err());
        assert!(homotopy_report(4, Window::line(8), 1e-9).is_err());
    }
}
