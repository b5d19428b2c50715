//! Truncated lattice representations and exact sparse operator algebra.
//!
//! Operators act on a finite window of a lattice basis: the line window
//! holds e_n for |n| <= N, the plane window e_{p,q} for |p|, |q| <= N, and
//! the pair window is C^2. A `doubled` window is two copies, used by the
//! graded modules. Basis vectors whose image would leave the window are
//! compressed to zero; interior-agreement checks make that truncation
//! detectable instead of silently folded.

use std::collections::HashMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{GroupElem, GroupTag, RingElement};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WindowKind {
    Pair,
    Line,
    Plane,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    pub kind: WindowKind,
    pub radius: u32,
    pub doubled: bool,
}

impl Window {
    pub fn pair() -> Self {
        Window {
            kind: WindowKind::Pair,
            radius: 0,
            doubled: false,
        }
    }

    pub fn line(radius: u32) -> Self {
        Window {
            kind: WindowKind::Line,
            radius,
            doubled: false,
        }
    }

    pub fn plane(radius: u32) -> Self {
        Window {
            kind: WindowKind::Plane,
            radius,
            doubled: false,
        }
    }

    pub fn doubled(mut self) -> Self {
        self.doubled = true;
        self
    }

    /// Number of basis vectors in one block.
    pub fn block_dim(&self) -> usize {
        let side = 2 * self.radius as usize + 1;
        match self.kind {
            WindowKind::Pair => 2,
            WindowKind::Line => side,
            WindowKind::Plane => side * side,
        }
    }

    pub fn dim(&self) -> usize {
        self.block_dim() * if self.doubled { 2 } else { 1 }
    }

    pub fn line_index(&self, n: i64) -> Option<usize> {
        debug_assert_eq!(self.kind, WindowKind::Line);
        let r = self.radius as i64;
        if n.abs() <= r {
            Some((n + r) as usize)
        } else {
            None
        }
    }

    pub fn plane_index(&self, p: i64, q: i64) -> Option<usize> {
        debug_assert_eq!(self.kind, WindowKind::Plane);
        let r = self.radius as i64;
        if p.abs() <= r && q.abs() <= r {
            let side = (2 * r + 1) as usize;
            Some(((p + r) as usize) * side + (q + r) as usize)
        } else {
            None
        }
    }

    /// Inverse of the flat index within one block.
    pub fn coords(&self, idx: usize) -> (i64, i64) {
        let idx = idx % self.block_dim();
        let r = self.radius as i64;
        match self.kind {
            WindowKind::Pair => (idx as i64, 0),
            WindowKind::Line => (idx as i64 - r, 0),
            WindowKind::Plane => {
                let side = (2 * r + 1) as usize;
                ((idx / side) as i64 - r, (idx % side) as i64 - r)
            }
        }
    }

    pub fn block_of(&self, idx: usize) -> usize {
        idx / self.block_dim()
    }

    /// Distance of a flat index from the window boundary.
    pub fn boundary_distance(&self, idx: usize) -> i64 {
        let (a, b) = self.coords(idx);
        let r = self.radius as i64;
        match self.kind {
            WindowKind::Pair => i64::MAX,
            WindowKind::Line => r - a.abs(),
            WindowKind::Plane => (r - a.abs()).min(r - b.abs()),
        }
    }

    /// Same kind and doubling, any radius.
    pub fn compatible_shape(&self, other: &Window) -> bool {
        self.kind == other.kind && self.doubled == other.doubled
    }
}

/// Entry scalar for sparse operators: exact Gaussian rationals or doubles.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> f64;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn abs(&self) -> f64 {
        let (re, im) = self.to_f64_pair();
        (re * re + im * im).sqrt()
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
}

/// Sparse windowed operator; entries indexed (row, col) over flat indices,
/// zeros never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseOp<T: Coeff> {
    pub window: Window,
    entries: HashMap<(usize, usize), T>,
}

pub type ExactOp = SparseOp<Scalar>;
pub type FloatOp = SparseOp<Complex64>;

impl<T: Coeff> SparseOp<T> {
    pub fn zero(window: Window) -> Self {
        SparseOp {
            window,
            entries: HashMap::new(),
        }
    }

    pub fn identity(window: Window) -> Self {
        let mut op = SparseOp::zero(window);
        for i in 0..window.dim() {
            op.set(i, i, T::one());
        }
        op
    }

    pub fn set(&mut self, row: usize, col: usize, v: T) {
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: &T) {
        if v.is_zero() {
            return;
        }
        let cur = self.entries.remove(&(row, col));
        let next = match cur {
            Some(c) => c.add(v),
            None => v.clone(),
        };
        if !next.is_zero() {
            self.entries.insert((row, col), next);
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> T {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(T::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = SparseOp::zero(self.window);
        for ((r, k), v) in &self.entries {
            out.set(*r, *k, v.mul(c));
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = SparseOp::zero(self.window);
        for ((r, k), v) in &self.entries {
            out.set(*k, *r, v.conj());
        }
        out
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for ((r, k), v) in &self.entries {
            if r == k {
                t = t.add(v);
            }
        }
        t
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .values()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }

    /// Embed a single-block operator into block `b` of the doubled window.
    pub fn embed_block(&self, b: usize) -> Self {
        assert!(!self.window.doubled && b < 2);
        let target = self.window.doubled();
        let off = b * self.window.block_dim();
        let mut out = SparseOp::zero(target);
        for ((r, k), v) in &self.entries {
            out.set(r + off, k + off, v.clone());
        }
        out
    }

    /// Extract block (row block rb, col block cb) of a doubled-window
    /// operator as an operator on the plain window.
    pub fn block(&self, rb: usize, cb: usize) -> Self {
        assert!(self.window.doubled && rb < 2 && cb < 2);
        let target = Window {
            doubled: false,
            ..self.window
        };
        let d = target.block_dim();
        let mut out = SparseOp::zero(target);
        for ((r, k), v) in &self.entries {
            if r / d == rb && k / d == cb {
                out.set(r % d, k % d, v.clone());
            }
        }
        out
    }

    /// Place a single-block operator as off-diagonal block (row block r,
    /// col block c) of the doubled window.
    pub fn embed_off_diag(&self, rb: usize, cb: usize) -> Self {
        assert!(!self.window.doubled && rb < 2 && cb < 2);
        let target = self.window.doubled();
        let d = self.window.block_dim();
        let mut out = SparseOp::zero(target);
        for ((r, k), v) in &self.entries {
            out.set(r + rb * d, k + cb * d, v.clone());
        }
        out
    }
}

fn check_same<T: Coeff>(a: &SparseOp<T>, b: &SparseOp<T>) -> Result<()> {
    if a.window != b.window {
        return Err(Error::WindowMismatch(format!(
            "{:?} vs {:?}",
            a.window, b.window
        )));
    }
    Ok(())
}

pub fn op_add<T: Coeff>(a: &SparseOp<T>, b: &SparseOp<T>) -> Result<SparseOp<T>> {
    check_same(a, b)?;
    let mut out = a.clone();
    for ((r, k), v) in &b.entries {
        out.add_to(*r, *k, v);
    }
    Ok(out)
}

pub fn op_sub<T: Coeff>(a: &SparseOp<T>, b: &SparseOp<T>) -> Result<SparseOp<T>> {
    op_add(a, &b.scale(&T::one().neg()))
}

pub fn op_mul<T: Coeff>(a: &SparseOp<T>, b: &SparseOp<T>) -> Result<SparseOp<T>> {
    check_same(a, b)?;
    // index a by column so each b entry touches only matching rows of a
    let mut by_col: HashMap<usize, Vec<(usize, &T)>> = HashMap::new();
    for ((r, k), v) in &a.entries {
        by_col.entry(*k).or_default().push((*r, v));
    }
    let mut out = SparseOp::zero(a.window);
    for ((j, k), v) in &b.entries {
        if let Some(col) = by_col.get(j) {
            for (i, av) in col {
                out.add_to(*i, *k, &av.mul(v));
            }
        }
    }
    Ok(out)
}

pub fn commutator<T: Coeff>(a: &SparseOp<T>, b: &SparseOp<T>) -> Result<SparseOp<T>> {
    op_sub(&op_mul(a, b)?, &op_mul(b, a)?)
}

pub fn anticommutator<T: Coeff>(a: &SparseOp<T>, b: &SparseOp<T>) -> Result<SparseOp<T>> {
    op_add(&op_mul(a, b)?, &op_mul(b, a)?)
}

pub fn op_pow<T: Coeff>(a: &SparseOp<T>, n: u32) -> Result<SparseOp<T>> {
    let mut out = SparseOp::identity(a.window);
    for _ in 0..n {
        out = op_mul(&out, a)?;
    }
    Ok(out)
}

/// Matrix rank by exact Gaussian elimination over Q(i). No tolerances.
pub fn rank_exact(a: &ExactOp) -> usize {
    let rows: Vec<HashMap<usize, Scalar>> = {
        let mut m: HashMap<usize, HashMap<usize, Scalar>> = HashMap::new();
        for ((r, k), v) in &a.entries {
            m.entry(*r).or_default().insert(*k, v.clone());
        }
        m.into_values().collect()
    };
    rank_of_rows(rows)
}

/// Rank of a list of sparse rows over Q(i).
pub fn rank_of_rows(mut rows: Vec<HashMap<usize, Scalar>>) -> usize {
    let mut rank = 0;
    while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
        let pivot_row = rows.swap_remove(pos);
        // smallest column index as pivot keeps this deterministic enough
        let &pc = pivot_row.keys().min().unwrap();
        let pv = pivot_row[&pc].clone();
        let pv_inv = pv.inv().expect("pivot is nonzero");
        rank += 1;
        for row in rows.iter_mut() {
            if let Some(c) = row.remove(&pc) {
                let factor = &c * &pv_inv;
                for (col, v) in &pivot_row {
                    if *col == pc {
                        continue;
                    }
                    let delta = &factor * v;
                    let entry = row.entry(*col).or_insert_with(Scalar::zero);
                    *entry -= &delta;
                    if entry.is_zero() {
                        row.remove(col);
                    }
                }
            }
        }
        rows.retain(|r| !r.is_empty());
    }
    rank
}

/// Diagonal sign operator on the line window: +1 for n >= 0, -1 for n < 0.
pub fn sign_f(w: Window) -> ExactOp {
    assert_eq!(w.kind, WindowKind::Line);
    assert!(!w.doubled);
    let mut op = SparseOp::zero(w);
    let r = w.radius as i64;
    for n in -r..=r {
        let idx = w.line_index(n).unwrap();
        let v = if n >= 0 {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
        op.set(idx, idx, v);
    }
    op
}

/// The even-module operator (0, iF; -iF, 0) on the doubled window.
pub fn block_even_f(f: &ExactOp) -> ExactOp {
    let i_f = f.scale(&Scalar::i());
    let minus_i_f = f.scale(&(-Scalar::i()));
    let top = i_f.embed_off_diag(0, 1);
    let bottom = minus_i_f.embed_off_diag(1, 0);
    op_add(&top, &bottom).expect("same doubled window")
}

/// The non-self-adjoint variant (0, F; F*, 0) on the doubled window.
pub fn block_even_general<T: Coeff>(f: &SparseOp<T>) -> SparseOp<T> {
    let top = f.embed_off_diag(0, 1);
    let bottom = f.adjoint().embed_off_diag(1, 0);
    op_add(&top, &bottom).expect("same doubled window")
}

/// diag(1, -1) by blocks on a doubled window (or the pair window).
pub fn grading<T: Coeff>(w: Window) -> SparseOp<T> {
    assert!(w.doubled || w.kind == WindowKind::Pair);
    let mut op = SparseOp::zero(w);
    let half = w.dim() / 2;
    for i in 0..w.dim() {
        let v = if i < half { T::one() } else { T::one().neg() };
        op.set(i, i, v);
    }
    op
}

/// Identifies which generator images a representation uses (equation-exact).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepId {
    /// phi + 0 on C^2, phi sending every group generator to 1.
    Rep0,
    /// S e_n = e_{n+1}, e e_n = e_{-n} on the line.
    Rep1,
    /// S e_n = e_{n+1}, e e_n = e_{-(n+1)} on the line.
    Rep2,
    /// The S-generated circle subalgebra acting by shifts on the line.
    RepCT,
    /// V acts by shift, U by the identity, on the line.
    RepB1,
    /// pi(V) e_{p,q} = e_{p+1,q}, pi(U) e_{p,q} = e_{p,q+(-1)^p} on the plane.
    RepB2D,
}

impl RepId {
    pub fn group_tag(&self) -> GroupTag {
        match self {
            RepId::Rep0 | RepId::Rep1 | RepId::Rep2 | RepId::RepCT => GroupTag::Dihedral,
            RepId::RepB1 | RepId::RepB2D => GroupTag::Semidirect,
        }
    }

    pub fn window_kind(&self) -> WindowKind {
        match self {
            RepId::Rep0 => WindowKind::Pair,
            RepId::Rep1 | RepId::Rep2 | RepId::RepCT | RepId::RepB1 => WindowKind::Line,
            RepId::RepB2D => WindowKind::Plane,
        }
    }
}

/// Image of a single group element: a partial permutation of the basis.
/// Returns None where the representation is undefined for the element.
fn basis_action(rep: RepId, g: &GroupElem, w: &Window, src: usize) -> Result<Option<usize>> {
    match (rep, g) {
        (RepId::Rep1, GroupElem::D(d)) => {
            let (n, _) = w.coords(src);
            let target = d.shift + if d.flip { -n } else { n };
            Ok(w.line_index(target))
        }
        (RepId::Rep2, GroupElem::D(d)) => {
            let (n, _) = w.coords(src);
            let target = d.shift + if d.flip { -n - 1 } else { n };
            Ok(w.line_index(target))
        }
        (RepId::RepCT, GroupElem::D(d)) => {
            if d.flip {
                return Err(Error::RepMismatch {
                    rep: "RepCT".into(),
                    detail: "support contains a reflection; only the S-span acts".into(),
                });
            }
            let (n, _) = w.coords(src);
            Ok(w.line_index(n + d.shift))
        }
        (RepId::RepB1, GroupElem::G(e)) => {
            let (n, _) = w.coords(src);
            Ok(w.line_index(n + e.b))
        }
        (RepId::RepB2D, GroupElem::G(e)) => {
            let (p, q) = w.coords(src);
            let np = p + e.b;
            let twist = if (np).rem_euclid(2) == 1 { -1 } else { 1 };
            let nq = q + e.a * twist;
            Ok(w.plane_index(np, nq))
        }
        _ => Err(Error::RepMismatch {
            rep: format!("{:?}", rep),
            detail: "group element belongs to the wrong group".into(),
        }),
    }
}

/// Represent a ring element on a window, compressing at the boundary.
pub fn represent(rep: RepId, x: &RingElement, w: Window) -> Result<ExactOp> {
    if x.tag() != rep.group_tag() {
        return Err(Error::RepMismatch {
            rep: format!("{:?}", rep),
            detail: "ring element has the wrong group tag".into(),
        });
    }
    if w.kind != rep.window_kind() || w.doubled {
        return Err(Error::WindowMismatch(format!(
            "{:?} needs a plain {:?} window",
            rep,
            rep.window_kind()
        )));
    }
    let mut op = SparseOp::zero(w);
    if rep == RepId::Rep0 {
        // phi + 0: the scalar sum of coefficients in the (0,0) corner
        let mut phi = Scalar::zero();
        for (_, c) in x.terms() {
            phi += c;
        }
        op.set(0, 0, phi);
        return Ok(op);
    }
    for (g, c) in x.terms() {
        for src in 0..w.dim() {
            if let Some(dst) = basis_action(rep, g, &w, src)? {
                op.add_to(dst, src, c);
            }
        }
    }
    Ok(op)
}

/// True iff all entries whose row and column both sit at distance >= margin
/// from `a`'s boundary agree between `a` and `b`.
pub fn interior_agreement<T: Coeff>(a: &SparseOp<T>, b: &SparseOp<T>, margin: i64) -> bool {
    if !a.window.compatible_shape(&b.window) || b.window.radius < a.window.radius {
        return false;
    }
    let wa = a.window;
    let wb = b.window;
    let translate = |idx: usize| -> usize {
        let (x, y) = wa.coords(idx);
        let blk = wa.block_of(idx);
        let flat = match wa.kind {
            WindowKind::Pair => x as usize,
            WindowKind::Line => wb.line_index(x).unwrap(),
            WindowKind::Plane => wb.plane_index(x, y).unwrap(),
        };
        flat + blk * wb.block_dim()
    };
    for r in 0..wa.dim() {
        if wa.boundary_distance(r) < margin {
            continue;
        }
        for c in 0..wa.dim() {
            if wa.boundary_distance(c) < margin {
                continue;
            }
            if a.entry(r, c) != b.entry(translate(r), translate(c)) {
                return false;
            }
        }
    }
    true
}

// --- JSON dump ----------------------------------------------------------

fn index_to_json(w: &Window, idx: usize) -> Value {
    let (x, y) = w.coords(idx);
    let blk = w.block_of(idx);
    match (w.kind, w.doubled) {
        (WindowKind::Pair, _) => json!(idx),
        (WindowKind::Line, false) => json!(x),
        (WindowKind::Line, true) => json!([blk, x]),
        (WindowKind::Plane, false) => json!([x, y]),
        (WindowKind::Plane, true) => json!([blk, x, y]),
    }
}

fn window_to_json(w: &Window) -> Value {
    let kind = match w.kind {
        WindowKind::Pair => "pair",
        WindowKind::Line => "line",
        WindowKind::Plane => "plane",
    };
    json!({"kind": kind, "radius": w.radius, "doubled": w.doubled})
}

pub fn exact_op_to_json(op: &ExactOp) -> Value {
    let mut entries: Vec<(&(usize, usize), &Scalar)> = op.entries().collect();
    entries.sort_by_key(|(k, _)| **k);
    let rows: Vec<Value> = entries
        .into_iter()
        .map(|((r, c), v)| {
            json!([
                index_to_json(&op.window, *r),
                index_to_json(&op.window, *c),
                Scalar::rational_to_string(&v.re),
                Scalar::rational_to_string(&v.im),
            ])
        })
        .collect();
    json!({"window": window_to_json(&op.window), "mode": "exact", "entries": rows})
}

pub fn float_op_to_json(op: &FloatOp) -> Value {
    let mut entries: Vec<(&(usize, usize), &Complex64)> = op.entries().collect();
    entries.sort_by_key(|(k, _)| **k);
    let rows: Vec<Value> = entries
        .into_iter()
        .map(|((r, c), v)| {
            json!([
                index_to_json(&op.window, *r),
                index_to_json(&op.window, *c),
                v.re,
                v.im,
            ])
        })
        .collect();
    json!({"window": window_to_json(&op.window), "mode": "float", "entries": rows})
}
