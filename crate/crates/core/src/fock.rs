//! Truncated full Fock space over `C^{2k}` with exact sparse operators.
//!
//! Basis vectors are tensor words over the alphabet `e_1', ..., e_k',
//! e_1'', ..., e_k''` of length `0..=depth`, the empty word being the vacuum
//! `Ω` at index 0. Creation operators prepend a letter and send top-length
//! words to zero. All entries are real rationals, so adjoints are
//! transposes.
//!
//! A vacuum moment of `n` operators, each lowering the length by at most
//! one, only ever sees words of length `<= n`; with `depth >= n` the
//! truncation is invisible.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::dist::Distribution;
use crate::error::{domain, Error, Result};
use crate::ncpart::{Colouring, NcPartition};
use crate::ncseries::Word;
use crate::Rational;

/// Orthonormal basis of the truncated Fock space.
#[derive(Clone, Debug)]
pub struct FockBasis {
    k: usize,
    depth: usize,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl FockBasis {
    pub fn new(k: usize, depth: usize) -> Result<Self> {
        if k == 0 || 2 * k > u8::MAX as usize {
            return domain(format!("unsupported number of variables {k}"));
        }
        if depth == 0 {
            return domain("Fock depth must be at least 1");
        }
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..depth {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..2 * k as u8).map(move |l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(FockBasis {
            k,
            depth,
            words,
            index,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Letters of the `i`-th basis word; `0..k` are primed, `k..2k` double-primed.
    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn index_of(&self, letters: &[u8]) -> Option<usize> {
        self.index.get(letters).copied()
    }

    fn letter(&self, i: usize, primed: bool) -> u8 {
        (if primed { i - 1 } else { self.k + i - 1 }) as u8
    }
}

/// Sparse vector on a [`FockBasis`].
pub type FockVector = BTreeMap<usize, Rational>;

/// The vacuum vector `Ω`.
pub fn vacuum() -> FockVector {
    FockVector::from([(0, Rational::one())])
}

/// Sparse square matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockOperator {
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl FockOperator {
    pub fn zero(dim: usize) -> Self {
        FockOperator {
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = FockOperator::zero(dim);
        for i in 0..dim {
            op.rows[i].insert(i, Rational::one());
        }
        op
    }

    /// Rank-one projection onto `Ω`.
    pub fn vacuum_projection(dim: usize) -> Self {
        let mut op = FockOperator::zero(dim);
        op.rows[0].insert(0, Rational::one());
        op
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.rows[row]
            .get(&col)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Vacuum state: `<X Ω, Ω>`.
    pub fn vacuum_state(&self) -> Rational {
        self.entry(0, 0)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    fn check_dim(&self, other: &FockOperator) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Mismatch(format!(
                "operators of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> FockOperator {
        let mut out = FockOperator::zero(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                out.rows[j].insert(i, v.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &FockOperator) -> Result<FockOperator> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &FockOperator) -> Result<FockOperator> {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &FockOperator, factor: &Rational) -> Result<FockOperator> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for (&j, v) in row {
                add_entry(&mut out.rows[i], j, v * factor);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, t: &Rational) -> FockOperator {
        if t.is_zero() {
            return FockOperator::zero(self.dim());
        }
        FockOperator {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(&j, v)| (j, v * t)).collect())
                .collect(),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &FockOperator) -> Result<FockOperator> {
        self.check_dim(other)?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BTreeMap::new();
                for (&j, a) in row {
                    for (&l, b) in &other.rows[j] {
                        add_entry(&mut acc, l, a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(FockOperator { rows })
    }

    /// `self · v`.
    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = Rational::zero();
            for (j, a) in row {
                if let Some(x) = v.get(j) {
                    acc += a * x;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    /// Row vector `u · self`.
    pub fn apply_left(&self, u: &FockVector) -> FockVector {
        let mut out = FockVector::new();
        for (&j, x) in u {
            for (&l, a) in &self.rows[j] {
                add_entry(&mut out, l, x * a);
            }
        }
        out
    }
}

fn add_entry(row: &mut BTreeMap<usize, Rational>, col: usize, value: Rational) {
    let e = row.entry(col).or_insert_with(Rational::zero);
    *e += value;
    if e.is_zero() {
        row.remove(&col);
    }
}

/// Left creation operator with `e_i'` (`primed`) or `e_i''`.
pub fn creation(basis: &FockBasis, i: usize, primed: bool) -> Result<FockOperator> {
    if i == 0 || i > basis.k {
        return domain(format!("creation index {i} outside 1..={}", basis.k));
    }
    let letter = basis.letter(i, primed);
    let mut op = FockOperator::zero(basis.dim());
    for (col, w) in basis.words.iter().enumerate() {
        if w.len() < basis.depth {
            let mut target = vec![letter];
            target.extend_from_slice(w);
            let row = basis.index[&target];
            op.rows[row].insert(col, Rational::one());
        }
    }
    Ok(op)
}

/// Adjoint of [`creation`].
pub fn annihilation(basis: &FockBasis, i: usize, primed: bool) -> Result<FockOperator> {
    Ok(creation(basis, i, primed)?.transpose())
}

/// The operators of the Fock model for `mu ⊳ nu`.
#[derive(Clone, Debug)]
pub struct FockModel {
    pub basis: FockBasis,
    pub t: FockOperator,
    pub a: Vec<FockOperator>,
    pub b: Vec<FockOperator>,
    pub c: Vec<FockOperator>,
    pub p_omega: FockOperator,
}

/// Builds `T = 1 + sum alpha_w L'_{w_n}...L'_{w_1} + sum beta_w L''_{w_n}...L''_{w_1}`,
/// `A_i = (L_i')^* T`, `B_i = (L_i'')^* T` and
/// `C_i = A_i + (1 - P_Ω) B_i (1 - P_Ω)`, where `alpha`, `beta` are the
/// free cumulants of `mu` and `nu`.
pub fn build_model(mu: &Distribution, nu: &Distribution, depth: usize) -> Result<FockModel> {
    mu.check_compatible(nu)?;
    let k = mu.k();
    let basis = FockBasis::new(k, depth)?;
    let dim = basis.dim();
    let primed: Vec<FockOperator> = (1..=k)
        .map(|i| creation(&basis, i, true))
        .collect::<Result<_>>()?;
    let double: Vec<FockOperator> = (1..=k)
        .map(|i| creation(&basis, i, false))
        .collect::<Result<_>>()?;

    let mut t = FockOperator::identity(dim);
    for (ops, series) in [(&primed, mu.r_series()), (&double, nu.r_series())] {
        for (w, coeff) in series.terms() {
            // L_{w_n} ... L_{w_1}: w_1 acts first.
            let mut mono = FockOperator::identity(dim);
            for pos in 1..=w.len() {
                mono = ops[w.letter(pos) - 1].mul(&mono)?;
            }
            t = t.add(&mono.scale(coeff))?;
        }
    }

    let p_omega = FockOperator::vacuum_projection(dim);
    let q = FockOperator::identity(dim).sub(&p_omega)?;
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    let mut c = Vec::with_capacity(k);
    for i in 0..k {
        let ai = primed[i].transpose().mul(&t)?;
        let bi = double[i].transpose().mul(&t)?;
        let ci = ai.add(&q.mul(&bi)?.mul(&q)?)?;
        a.push(ai);
        b.push(bi);
        c.push(ci);
    }
    Ok(FockModel {
        basis,
        t,
        a,
        b,
        c,
        p_omega,
    })
}

/// `<X_{i_1} ... X_{i_n} Ω, Ω>` where `ops[i-1]` plays `X_i`.
pub fn vacuum_moment(ops: &[FockOperator], word: &Word) -> Result<Rational> {
    if word.max_letter() > ops.len() {
        return domain(format!("word {word} uses more than {} operators", ops.len()));
    }
    if ops.is_empty() {
        return domain("no operators given");
    }
    let mut row = vacuum();
    for &l in word.letters() {
        row = ops[l as usize - 1].apply_left(&row);
        if row.is_empty() {
            return Ok(Rational::zero());
        }
    }
    Ok(row.get(&0).cloned().unwrap_or_else(Rational::zero))
}

/// Vacuum moments of every word of length `1..=max_len`, sharing prefixes.
pub fn vacuum_moments(ops: &[FockOperator], max_len: usize) -> BTreeMap<Word, Rational> {
    let k = ops.len();
    let mut out = BTreeMap::new();
    let mut frontier: Vec<(Vec<u8>, FockVector)> = vec![(Vec::new(), vacuum())];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * k);
        for (prefix, row) in &frontier {
            for l in 1..=k as u8 {
                let v = ops[l as usize - 1].apply_left(row);
                let mut letters = prefix.clone();
                letters.push(l);
                let value = v.get(&0).cloned().unwrap_or_else(Rational::zero);
                out.insert(Word::from_raw(&letters), value);
                next.push((letters, v));
            }
        }
        frontier = next;
    }
    out
}

/// `X_{w_1} ... X_{w_n} v` with `ops[i-1]` playing `X_i` (rightmost acts first).
pub fn apply_word(ops: &[FockOperator], word: &Word, v: &FockVector) -> FockVector {
    let mut out = v.clone();
    for &l in word.letters().iter().rev() {
        out = ops[l as usize - 1].apply(&out);
    }
    out
}

/// An alternating product of centred polynomials with nonzero vacuum
/// expectation; factors are listed left to right as `(side, word)` with
/// side `'A'` or `'B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessFailure {
    pub factors: Vec<(char, Word)>,
    pub value: Rational,
}

/// Freeness of the `A`-tuple from the `B`-tuple, spot-checked: every
/// alternating product of at most `max_factors` centred monomials
/// `X_w - φ(X_w)` of degree 1 or 2 has vacuum expectation zero. Products
/// whose total degree exceeds the basis depth are skipped, since the
/// truncation is only invisible below it.
pub fn check_freeness(model: &FockModel, max_factors: usize) -> Result<Option<FreenessFailure>> {
    let k = model.basis.k();
    let mut monomials = Vec::new();
    for len in 1..=2 {
        for i in 0..k.pow(len as u32) {
            let letters: Vec<usize> = (0..len).map(|p| (i / k.pow(p as u32)) % k + 1).collect();
            monomials.push(Word::new(&letters, k)?);
        }
    }
    let mut centred = Vec::new();
    for (side, ops) in [('A', &model.a), ('B', &model.b)] {
        for w in &monomials {
            let phi = vacuum_moment(ops, w)?;
            centred.push((side, w.clone(), phi));
        }
    }
    let mut stack = Vec::new();
    Ok(freeness_search(
        model,
        &centred,
        &vacuum(),
        None,
        0,
        max_factors,
        &mut stack,
    ))
}

fn freeness_search(
    model: &FockModel,
    centred: &[(char, Word, Rational)],
    v: &FockVector,
    last_side: Option<char>,
    degree: usize,
    remaining: usize,
    stack: &mut Vec<(char, Word)>,
) -> Option<FreenessFailure> {
    if stack.len() >= 2 {
        let value = v.get(&0).cloned().unwrap_or_else(Rational::zero);
        if !value.is_zero() {
            let factors = stack.iter().rev().cloned().collect();
            return Some(FreenessFailure { factors, value });
        }
    }
    if remaining == 0 {
        return None;
    }
    for (side, w, phi) in centred {
        if Some(*side) == last_side || degree + w.len() > model.basis.depth() {
            continue;
        }
        let ops = if *side == 'A' { &model.a } else { &model.b };
        let mut next = apply_word(ops, w, v);
        for (&i, x) in v {
            add_entry(&mut next, i, -(phi * x));
        }
        stack.push((*side, w.clone()));
        let found = freeness_search(
            model,
            centred,
            &next,
            Some(*side),
            degree + w.len(),
            remaining - 1,
            stack,
        );
        stack.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Why a candidate failed to be a vacuum projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionFailure {
    /// Index of the offending probe (or pair of probes), if a probe was involved.
    pub probes: Option<(usize, usize)>,
    pub reason: &'static str,
}

/// Checks `P^2 = P != 0`, `φ(P) = 1`, `P X P = φ(X) P`, `φ(P X) = φ(X) =
/// φ(X P)` for every probe and `φ(X P Y) = φ(X) φ(Y)` for every pair,
/// with `φ` the vacuum state.
pub fn check_vacuum_projection(
    p: &FockOperator,
    probes: &[FockOperator],
) -> Result<std::result::Result<(), ProjectionFailure>> {
    let fail = |probes, reason| Ok(Err(ProjectionFailure { probes, reason }));
    if p.is_zero() {
        return fail(None, "projection is zero");
    }
    if p.mul(p)? != *p {
        return fail(None, "not idempotent");
    }
    if !p.vacuum_state().is_one() {
        return fail(None, "vacuum state of the projection is not 1");
    }
    for (i, x) in probes.iter().enumerate() {
        let phi = x.vacuum_state();
        if p.mul(x)?.mul(p)? != p.scale(&phi) {
            return fail(Some((i, i)), "P X P differs from φ(X) P");
        }
        if p.mul(x)?.vacuum_state() != phi || x.mul(p)?.vacuum_state() != phi {
            return fail(Some((i, i)), "φ(P X) or φ(X P) differs from φ(X)");
        }
    }
    for (i, x) in probes.iter().enumerate() {
        let xp = x.mul(p)?;
        for (j, y) in probes.iter().enumerate() {
            if xp.mul(y)?.vacuum_state() != x.vacuum_state() * y.vacuum_state() {
                return fail(Some((i, j)), "φ(X P Y) differs from φ(X) φ(Y)");
            }
        }
    }
    Ok(Ok(()))
}

/// The vector `Q_1 S_1^* M_1 Q_1 ... Q_n S_n^* M_n Q_n Ω` attached to a
/// partition and colouring: `S_m` is `L'_{i_m}` or `L''_{i_m}` by the colour
/// of the block of `m`, `M_m` recreates the whole block at its maximum and
/// is the identity elsewhere, and `Q_m` is `1` on colour-1 blocks and
/// `1 - P_Ω` on colour-2 blocks (`Q_m = 1` throughout when
/// `with_projections` is false).
pub fn partition_monomial_vector(
    basis: &FockBasis,
    word: &Word,
    pi: &NcPartition,
    colouring: &Colouring,
    with_projections: bool,
) -> Result<FockVector> {
    let n = word.len();
    if pi.n() != n || colouring.len() != pi.len() {
        return Err(Error::Mismatch(format!(
            "word {word}, partition {pi}, colouring of {} blocks",
            colouring.len()
        )));
    }
    if word.max_letter() > basis.k {
        return domain(format!("word {word} has letters outside 1..={}", basis.k));
    }
    let labels = pi.labels();
    let dim = basis.dim();
    let q = FockOperator::identity(dim).sub(&FockOperator::vacuum_projection(dim))?;
    let mut v = vacuum();
    for m in (1..=n).rev() {
        let block_idx = labels[m];
        let block = &pi.blocks()[block_idx];
        let primed = colouring.colour(block_idx) == 1;
        let use_q = with_projections && !primed;
        if use_q {
            v = q.apply(&v);
        }
        if block[block.len() - 1] == m {
            for &x in block {
                v = creation(basis, word.letter(x), primed)?.apply(&v);
            }
        }
        v = annihilation(basis, word.letter(m), primed)?.apply(&v);
        if use_q {
            v = q.apply(&v);
        }
    }
    Ok(v)
}
