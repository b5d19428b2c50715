//! Cyclic cochain calculus on the dihedral group ring.
//!
//! A 0-cochain is a pair of sequences (a, b) with psi(S^m) = a_m and
//! psi(S^m e) = b_m. A cyclic 1-cocycle is determined by sequences (c, d)
//! with d antisymmetric; 2-cochains appear as raw triple tables or as
//! coboundaries. The two constructive solvers invert b on the window: every
//! 1-cocycle is a 0-coboundary, and the suspension of psi_k (k != 0) is a
//! 1-coboundary.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{dihedral_ball, dmul, DihedralElement};
use crate::ring::{GroupElem, RingElement};
use crate::scalar::Scalar;

pub type SeqTable = BTreeMap<i64, Scalar>;

fn table_get(t: &SeqTable, k: i64) -> Scalar {
    t.get(&k).cloned().unwrap_or_else(Scalar::zero)
}

fn table_set(t: &mut SeqTable, k: i64, v: Scalar) {
    if v.is_zero() {
        t.remove(&k);
    } else {
        t.insert(k, v);
    }
}

/// Linear functional on the group ring: psi(S^m) = a_m, psi(S^m e) = b_m.
///
/// The trace condition forces b to depend only on the parity of its index,
/// so interesting traces (the projection duals) have infinite b-support.
/// `b_even`/`b_odd` carry that constant background exactly; the sparse `b`
/// table holds finitely many overrides on top of it.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Cochain0 {
    pub a: SeqTable,
    pub b: SeqTable,
    pub b_even: Scalar,
    pub b_odd: Scalar,
}

impl Cochain0 {
    pub fn zero() -> Self {
        Cochain0::default()
    }

    pub fn from_tables(a: SeqTable, b: SeqTable) -> Self {
        let mut out = Cochain0::zero();
        for (k, v) in a {
            table_set(&mut out.a, k, v);
        }
        for (k, v) in b {
            table_set(&mut out.b, k, v);
        }
        out
    }

    pub fn a_at(&self, m: i64) -> Scalar {
        table_get(&self.a, m)
    }

    pub fn b_at(&self, m: i64) -> Scalar {
        match self.b.get(&m) {
            Some(v) => v.clone(),
            None if m.rem_euclid(2) == 0 => self.b_even.clone(),
            None => self.b_odd.clone(),
        }
    }

    pub fn eval_elem(&self, g: DihedralElement) -> Scalar {
        if g.flip {
            self.b_at(g.shift)
        } else {
            self.a_at(g.shift)
        }
    }

    /// Linear extension to the group ring.
    pub fn eval_ring(&self, x: &RingElement) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (g, c) in x.terms() {
            let GroupElem::D(d) = g else {
                return Err(Error::GroupMismatch);
            };
            out += &(c * &self.eval_elem(*d));
        }
        Ok(out)
    }
}

/// The distinguished trace psi_i dual to projection(i), i in {0, 1, 2}:
/// psi_0 has a_0 = 1 and b = -1 on all reflections, psi_1 has b = 2 on even
/// reflection indices, psi_2 has b = 2 on odd ones. With the projections
/// P_0 = 1, P_1 = (1+e)/2, P_2 = (1+Se)/2 this is the exact dual basis:
/// psi_i(P_j) = delta_ij.
pub fn make_psi(i: usize) -> Cochain0 {
    let mut psi = Cochain0::zero();
    match i {
        0 => {
            table_set(&mut psi.a, 0, Scalar::one());
            psi.b_even = -Scalar::one();
            psi.b_odd = -Scalar::one();
        }
        1 => psi.b_even = Scalar::from_int(2),
        2 => psi.b_odd = Scalar::from_int(2),
        _ => panic!("psi index must be 0, 1 or 2"),
    }
    psi
}

/// psi_k(S^m) = delta_{k,m} + delta_{k,-m}, zero on reflections. k != 0.
pub fn make_psi_k(k: i64) -> Result<Cochain0> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let mut psi = Cochain0::zero();
    table_set(&mut psi.a, k, Scalar::one());
    table_set(&mut psi.a, -k, Scalar::one());
    Ok(psi)
}

/// True iff psi(xy) = psi(yx) for all elements of word length <= bound.
pub fn is_trace(psi: &Cochain0, bound: u64) -> bool {
    let ball = dihedral_ball(bound);
    ball.iter().all(|&x| {
        ball.iter()
            .all(|&y| psi.eval_elem(dmul(x, y)) == psi.eval_elem(dmul(y, x)))
    })
}

/// Cyclic 1-cochains in the forms the calculus produces.
#[derive(Clone, Debug)]
pub enum Cochain1 {
    /// The classified cocycle form: phi(S^m, S^n) = 0, phi(S^m, S^n e) a
    /// signed partial sum of c, phi(S^m e, S^n e) = d_{n-m}.
    Structured { c: SeqTable, d: SeqTable },
    /// The explicit primitive of the suspended psi_k with free scalar c_k.
    PsiKPrimitive { k: i64, free: Scalar },
    /// A raw antisymmetric pair table; zero outside the table.
    Raw(BTreeMap<(DihedralElement, DihedralElement), Scalar>),
    /// b0(psi), evaluated pointwise.
    Coboundary0(Box<Cochain0>),
}

impl Cochain1 {
    pub fn structured(c: SeqTable, d: SeqTable) -> Result<Cochain1> {
        for (n, v) in &d {
            if table_get(&d, -n) != -v {
                return Err(Error::NotAntisymmetric);
            }
        }
        Ok(Cochain1::Structured { c, d })
    }

    pub fn eval(&self, x: DihedralElement, y: DihedralElement) -> Scalar {
        match self {
            Cochain1::Structured { c, d } => match (x.flip, y.flip) {
                (false, false) => Scalar::zero(),
                (false, true) => partial_sum(c, x.shift, y.shift),
                (true, false) => -partial_sum(c, y.shift, x.shift),
                (true, true) => table_get(d, y.shift - x.shift),
            },
            Cochain1::PsiKPrimitive { k, free } => psik_primitive_eval(*k, free, x, y),
            Cochain1::Raw(table) => table
                .get(&(x, y))
                .cloned()
                .unwrap_or_else(Scalar::zero),
            Cochain1::Coboundary0(psi) => {
                psi.eval_elem(dmul(x, y)) - psi.eval_elem(dmul(y, x))
            }
        }
    }
}

/// phi(S^m, S^n e) = sum of c over {n-m+1, n-m+3, ..., n+m-1} for m > 0,
/// zero for m = 0, and the negated mirrored sum for m < 0 (the unique
/// extension consistent with the cocycle recursion).
fn partial_sum(c: &SeqTable, m: i64, n: i64) -> Scalar {
    let mut out = Scalar::zero();
    if m > 0 {
        let mut j = n - m + 1;
        while j <= n + m - 1 {
            out += &table_get(c, j);
            j += 2;
        }
    } else if m < 0 {
        let mut j = n + m + 1;
        while j <= n - m - 1 {
            out -= &table_get(c, j);
            j += 2;
        }
    }
    out
}

/// alpha_{m,n} = (m-n)/(m+n) on m+n = +-k; beta = 0; gamma_{m,n} = 2n/k - c_k
/// on m-n = k, -2m/k + c_k on m-n = -k.
fn psik_primitive_eval(k: i64, free: &Scalar, x: DihedralElement, y: DihedralElement) -> Scalar {
    match (x.flip, y.flip) {
        (false, false) => {
            let (m, n) = (x.shift, y.shift);
            if m + n == k || m + n == -k {
                Scalar::from_ratio(m - n, m + n)
            } else {
                Scalar::zero()
            }
        }
        (false, true) | (true, false) => Scalar::zero(),
        (true, true) => {
            let (m, n) = (x.shift, y.shift);
            if m - n == k {
                Scalar::from_ratio(2 * n, k) - free
            } else if m - n == -k {
                -Scalar::from_ratio(2 * m, k) + free.clone()
            } else {
                Scalar::zero()
            }
        }
    }
}

/// Build the classified cocycle from its (c, d) data.
pub fn cocycle1_from_cd(c: SeqTable, d: SeqTable) -> Result<Cochain1> {
    Cochain1::structured(c, d)
}

/// b0(psi)(x, y) = psi(xy) - psi(yx).
pub fn b0(psi: &Cochain0) -> Cochain1 {
    Cochain1::Coboundary0(Box::new(psi.clone()))
}

/// Cyclic 2-cochains.
#[derive(Clone, Debug)]
pub enum Cochain2 {
    Raw(BTreeMap<(DihedralElement, DihedralElement, DihedralElement), Scalar>),
    /// The suspension S psi: (x, y, z) -> psi(xyz).
    Suspension(Box<Cochain0>),
    /// b1(phi), evaluated pointwise.
    Coboundary1(Box<Cochain1>),
}

impl Cochain2 {
    pub fn eval(&self, x: DihedralElement, y: DihedralElement, z: DihedralElement) -> Scalar {
        match self {
            Cochain2::Raw(t) => t.get(&(x, y, z)).cloned().unwrap_or_else(Scalar::zero),
            Cochain2::Suspension(psi) => psi.eval_elem(dmul(dmul(x, y), z)),
            Cochain2::Coboundary1(phi) => {
                phi.eval(dmul(x, y), z) - phi.eval(x, dmul(y, z)) + phi.eval(dmul(z, x), y)
            }
        }
    }
}

/// b1(phi)(x, y, z) = phi(xy, z) - phi(x, yz) + phi(zx, y).
pub fn b1(phi: &Cochain1) -> Cochain2 {
    Cochain2::Coboundary1(Box::new(phi.clone()))
}

/// The periodicity image of a trace: S psi (x, y, z) = psi(xyz).
/// Rejects non-traces.
pub fn s0(psi: &Cochain0, trace_bound: u64) -> Result<Cochain2> {
    if !is_trace(psi, trace_bound) {
        return Err(Error::NotATrace);
    }
    Ok(Cochain2::Suspension(Box::new(psi.clone())))
}

/// Constructive inverse of b0 on the classified cocycle space: given (c, d),
/// produce psi with b0(psi) = phi, verified exactly on all pairs of word
/// length <= window.
pub fn solve_1coboundary(phi: &Cochain1, window: u64) -> Result<Cochain0> {
    let Cochain1::Structured { c, d } = phi else {
        return Err(Error::BadInput(
            "solver needs the structured (c, d) form".into(),
        ));
    };
    let mut psi = Cochain0::zero();
    // a_m = -d_m for m > 0, else 0
    for (&m, v) in d {
        if m > 0 {
            table_set(&mut psi.a, m, -v.clone());
        }
    }
    // b satisfies b_{j+2} - b_j = c_{j+1}, with b_0 = 0 and b_1 = c_0
    let c_radius = c.keys().map(|k| k.abs()).max().unwrap_or(0);
    let radius = 2 * window as i64 + c_radius + 2;
    table_set(&mut psi.b, 1, table_get(c, 0));
    for j in 2..=radius {
        let v = table_get(&psi.b, j - 2) + &table_get(c, j - 1);
        table_set(&mut psi.b, j, v);
    }
    for j in (-radius..=-1).rev() {
        let v = table_get(&psi.b, j + 2) - &table_get(c, j + 1);
        table_set(&mut psi.b, j, v);
    }
    // residual must vanish identically on the window; a nonzero residual
    // would falsify the classification
    let bcb = b0(&psi);
    let ball = dihedral_ball(window);
    for &x in &ball {
        for &y in &ball {
            if bcb.eval(x, y) != phi.eval(x, y) {
                return Err(Error::NonzeroResidual);
            }
        }
    }
    Ok(psi)
}

/// The explicit primitive of S psi_k (k != 0) with free scalar c_k.
pub fn solve_2coboundary_psik(k: i64, free: Scalar) -> Result<Cochain1> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    Ok(Cochain1::PsiKPrimitive { k, free })
}

/// Outcome of the window-exact linear feasibility oracle.
pub enum Feasibility {
    Feasible(Cochain1),
    Infeasible,
}

/// Brute-force oracle: solve b1(phi) = target over unknowns phi(x, y) with
/// cyclic antisymmetry, for x, y in the ball of word length <= window and
/// triples drawn from the half-window (so all products stay inside the
/// unknown set). Returns a solution table or a certificate of
/// window-infeasibility from exact elimination.
pub fn coboundary_feasible(target: &Cochain2, window: u64) -> Feasibility {
    let ball = dihedral_ball(window);
    let half = dihedral_ball(window / 2);

    // one variable per unordered pair {g, h} with g < h; phi(g, g) = 0
    let mut var_of: HashMap<(DihedralElement, DihedralElement), usize> = HashMap::new();
    let mut pairs: Vec<(DihedralElement, DihedralElement)> = Vec::new();
    for &g in &ball {
        for &h in &ball {
            if g < h {
                var_of.insert((g, h), pairs.len());
                pairs.push((g, h));
            }
        }
    }
    // signed lookup: phi(g, h) = sign * var
    let lookup = |g: DihedralElement, h: DihedralElement| -> Option<(usize, i64)> {
        if g == h {
            return None;
        }
        if g < h {
            var_of.get(&(g, h)).map(|&v| (v, 1))
        } else {
            var_of.get(&(h, g)).map(|&v| (v, -1))
        }
    };

    let mut rows: Vec<(HashMap<usize, Scalar>, Scalar)> = Vec::new();
    for &x in &half {
        for &y in &half {
            for &z in &half {
                let mut coeffs: HashMap<usize, Scalar> = HashMap::new();
                let mut add = |pair: Option<(usize, i64)>, sign: i64| {
                    if let Some((v, s)) = pair {
                        let entry = coeffs.entry(v).or_insert_with(Scalar::zero);
                        *entry += &Scalar::from_int(s * sign);
                    }
                };
                add(lookup(dmul(x, y), z), 1);
                add(lookup(x, dmul(y, z)), -1);
                add(lookup(dmul(z, x), y), 1);
                coeffs.retain(|_, v| !v.is_zero());
                let rhs = target.eval(x, y, z);
                if coeffs.is_empty() && !rhs.is_zero() {
                    return Feasibility::Infeasible;
                }
                if !coeffs.is_empty() || !rhs.is_zero() {
                    rows.push((coeffs, rhs));
                }
            }
        }
    }

    match solve_sparse_system(rows, pairs.len()) {
        Some(solution) => {
            let mut table = BTreeMap::new();
            for (i, (g, h)) in pairs.iter().enumerate() {
                let v = &solution[i];
                if !v.is_zero() {
                    table.insert((*g, *h), v.clone());
                    table.insert((*h, *g), -v);
                }
            }
            Feasibility::Feasible(Cochain1::Raw(table))
        }
        None => Feasibility::Infeasible,
    }
}

/// Exact sparse Gaussian elimination with right-hand sides; returns a
/// particular solution (free variables set to zero) or None if inconsistent.
fn solve_sparse_system(
    mut rows: Vec<(HashMap<usize, Scalar>, Scalar)>,
    nvars: usize,
) -> Option<Vec<Scalar>> {
    let mut pivots: Vec<(usize, HashMap<usize, Scalar>, Scalar)> = Vec::new();
    loop {
        let pos = rows.iter().position(|(r, _)| !r.is_empty());
        let Some(pos) = pos else { break };
        let (prow, prhs) = rows.swap_remove(pos);
        let &pc = prow.keys().min().unwrap();
        let pinv = prow[&pc].inv().expect("nonzero pivot");
        // normalize
        let nrow: HashMap<usize, Scalar> =
            prow.iter().map(|(c, v)| (*c, v * &pinv)).collect();
        let nrhs = &prhs * &pinv;
        let mut next = Vec::with_capacity(rows.len());
        for (mut row, mut rhs) in rows {
            if let Some(factor) = row.remove(&pc) {
                for (col, v) in &nrow {
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
                rhs -= &(&factor * &nrhs);
            }
            if row.is_empty() {
                if !rhs.is_zero() {
                    return None;
                }
            } else {
                next.push((row, rhs));
            }
        }
        rows = next;
        pivots.push((pc, nrow, nrhs));
    }
    // back-substitute in reverse pivot order, free variables zero
    let mut x = vec![Scalar::zero(); nvars];
    for (pc, row, rhs) in pivots.into_iter().rev() {
        let mut v = rhs;
        for (col, coeff) in &row {
            if *col != pc {
                v -= &(coeff * &x[*col]);
            }
        }
        x[pc] = v;
    }
    Some(x)
}

/// Pairing of a 0-cochain with a ring element (linear evaluation).
pub fn pair0(psi: &Cochain0, x: &RingElement) -> Result<Scalar> {
    psi.eval_ring(x)
}

// --- JSON wire formats --------------------------------------------------

fn seq_to_json(t: &SeqTable) -> Value {
    let map: serde_json::Map<String, Value> = t
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.to_compact_string())))
        .collect();
    Value::Object(map)
}

fn seq_from_json(v: &Value) -> Result<SeqTable> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadInput("sequence table must be an object".into()))?;
    let mut t = SeqTable::new();
    for (k, val) in obj {
        let idx: i64 = k
            .parse()
            .map_err(|_| Error::BadInput(format!("bad sequence index {k}")))?;
        let s = val
            .as_str()
            .ok_or_else(|| Error::BadInput("scalar must be a string".into()))?;
        table_set(&mut t, idx, Scalar::from_compact_str(s)?);
    }
    Ok(t)
}

pub fn cochain0_to_json(psi: &Cochain0) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("a".into(), seq_to_json(&psi.a));
    obj.insert("b".into(), seq_to_json(&psi.b));
    if !psi.b_even.is_zero() {
        obj.insert(
            "b_even".into(),
            Value::String(psi.b_even.to_compact_string()),
        );
    }
    if !psi.b_odd.is_zero() {
        obj.insert("b_odd".into(), Value::String(psi.b_odd.to_compact_string()));
    }
    Value::Object(obj)
}

pub fn cochain0_from_json(v: &Value) -> Result<Cochain0> {
    let a = seq_from_json(v.get("a").unwrap_or(&json!({})))?;
    let b = seq_from_json(v.get("b").unwrap_or(&json!({})))?;
    let mut psi = Cochain0::from_tables(a, b);
    for (key, slot) in [("b_even", 0), ("b_odd", 1)] {
        if let Some(val) = v.get(key) {
            let s = val
                .as_str()
                .ok_or_else(|| Error::BadInput(format!("{key} must be a string")))?;
            let parsed = Scalar::from_compact_str(s)?;
            if slot == 0 {
                psi.b_even = parsed;
            } else {
                psi.b_odd = parsed;
            }
        }
    }
    Ok(psi)
}

fn elem_to_json(g: DihedralElement) -> Value {
    json!([g.shift, i64::from(g.flip)])
}

fn elem_from_json(v: &Value) -> Result<DihedralElement> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::BadInput("group element must be [m, eps]".into()))?;
    let m = arr[0]
        .as_i64()
        .ok_or_else(|| Error::BadInput("non-integer shift".into()))?;
    let eps = arr[1]
        .as_i64()
        .filter(|e| *e == 0 || *e == 1)
        .ok_or_else(|| Error::BadInput("flip bit must be 0 or 1".into()))?;
    Ok(DihedralElement::new(m, eps == 1))
}

pub fn cochain1_to_json(phi: &Cochain1, window: Option<u64>) -> Value {
    match phi {
        Cochain1::Structured { c, d } => {
            json!({"c": seq_to_json(c), "d": seq_to_json(d)})
        }
        Cochain1::Raw(t) => {
            let pairs: Vec<Value> = t
                .iter()
                .map(|((g, h), v)| {
                    json!([elem_to_json(*g), elem_to_json(*h), v.to_compact_string()])
                })
                .collect();
            json!({"pairs": pairs})
        }
        other => {
            // formula-backed cochains serialize as their window table
            let w = window.unwrap_or(12);
            let ball = dihedral_ball(w);
            let mut pairs = Vec::new();
            for &g in &ball {
                for &h in &ball {
                    let v = other.eval(g, h);
                    if !v.is_zero() {
                        pairs.push(json!([
                            elem_to_json(g),
                            elem_to_json(h),
                            v.to_compact_string()
                        ]));
                    }
                }
            }
            json!({"pairs": pairs})
        }
    }
}

pub fn cochain1_from_json(v: &Value) -> Result<Cochain1> {
    if v.get("pairs").is_some() {
        let arr = v["pairs"]
            .as_array()
            .ok_or_else(|| Error::BadInput("\"pairs\" must be an array".into()))?;
        let mut t = BTreeMap::new();
        for p in arr {
            let triple = p
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::BadInput("pair entry must be [g, h, scalar]".into()))?;
            let g = elem_from_json(&triple[0])?;
            let h = elem_from_json(&triple[1])?;
            let s = triple[2]
                .as_str()
                .ok_or_else(|| Error::BadInput("scalar must be a string".into()))?;
            t.insert((g, h), Scalar::from_compact_str(s)?);
        }
        Ok(Cochain1::Raw(t))
    } else {
        let c = seq_from_json(v.get("c").unwrap_or(&json!({})))?;
        let d = seq_from_json(v.get("d").unwrap_or(&json!({})))?;
        Cochain1::structured(c, d)
    }
}

pub fn cochain2_to_json(phi: &Cochain2, window: u64) -> Value {
    let ball = dihedral_ball(window);
    let mut triples = Vec::new();
    for &x in &ball {
        for &y in &ball {
            for &z in &ball {
                let v = phi.eval(x, y, z);
                if !v.is_zero() {
                    triples.push(json!([
                        elem_to_json(x),
                        elem_to_json(y),
                        elem_to_json(z),
                        v.to_compact_string()
                    ]));
                }
            }
        }
    }
    json!({"triples": triples})
}
