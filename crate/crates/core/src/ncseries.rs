//! Truncated formal power series in `k` noncommuting indeterminates with
//! vanishing constant term and exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{domain, Error, Result};
use crate::ncpart::{Colouring, NcPartition};
use crate::Rational;

/// A nonempty sequence of indeterminate indices, each in `1..=k`.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(SmallVec<[u8; 8]>);

impl Word {
    pub fn new(letters: &[usize], k: usize) -> Result<Self> {
        if letters.is_empty() {
            return domain("words must have at least one letter");
        }
        if k == 0 || k > u8::MAX as usize {
            return domain(format!("unsupported number of variables {k}"));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > k) {
            return domain(format!("letter {bad} outside 1..={k}"));
        }
        Ok(Word(letters.iter().map(|&l| l as u8).collect()))
    }

    pub(crate) fn from_raw(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Letter at 1-based position `pos`.
    pub fn letter(&self, pos: usize) -> usize {
        self.0[pos - 1] as usize
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(i_1, ..., i_n) | V` for a set of 1-based positions listed in
    /// increasing order.
    pub fn restrict(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p - 1]).collect())
    }

    /// Contiguous subword on positions `p..=q` (1-based).
    pub fn slice(&self, p: usize, q: usize) -> Word {
        Word(SmallVec::from_slice(&self.0[p - 1..q]))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{self}")
    }
}

/// Every word of length exactly `len` over `k` letters, in lexicographic order.
pub fn words_of_len(k: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word(SmallVec::new())];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=k as u8).map(move |l| {
                    let mut next = w.0.clone();
                    next.push(l);
                    Word(next)
                })
            })
            .collect();
    }
    out
}

/// Every word of length `1..=order`, in word order.
pub fn words_up_to(k: usize, order: usize) -> Vec<Word> {
    (1..=order).flat_map(|len| words_of_len(k, len)).collect()
}

type Terms = BTreeMap<Word, Rational>;

/// Element of the truncated ring: coefficients on words of length
/// `1..=order`, absent words meaning zero.
#[derive(Clone, PartialEq, Eq)]
pub struct NcSeries {
    k: usize,
    order: usize,
    coeffs: Terms,
}

impl NcSeries {
    pub fn zero(k: usize, order: usize) -> Result<Self> {
        if k == 0 || k > u8::MAX as usize {
            return domain(format!("unsupported number of variables {k}"));
        }
        if order == 0 {
            return domain("truncation order must be at least 1");
        }
        Ok(NcSeries {
            k,
            order,
            coeffs: Terms::new(),
        })
    }

    /// The indeterminate `z_i`.
    pub fn variable(k: usize, order: usize, i: usize) -> Result<Self> {
        NcSeries::monomial(k, order, &[i], Rational::one())
    }

    pub fn monomial(k: usize, order: usize, letters: &[usize], coeff: Rational) -> Result<Self> {
        let mut s = NcSeries::zero(k, order)?;
        s.set(Word::new(letters, k)?, coeff)?;
        Ok(s)
    }

    /// Builds a series from `(word, value)` pairs; repeated words are summed.
    pub fn from_terms<I>(k: usize, order: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut s = NcSeries::zero(k, order)?;
        for (w, v) in terms {
            s.check_word(&w)?;
            *s.coeffs.entry(w).or_insert_with(Rational::zero) += v;
        }
        s.coeffs.retain(|_, v| !v.is_zero());
        Ok(s)
    }

    pub(crate) fn from_raw(k: usize, order: usize, mut coeffs: Terms) -> Self {
        coeffs.retain(|w, v| !v.is_zero() && w.len() <= order);
        NcSeries { k, order, coeffs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.is_empty() {
            return domain("empty word");
        }
        if w.max_letter() > self.k {
            return domain(format!("word {w} has a letter outside 1..={}", self.k));
        }
        if w.len() > self.order {
            return Err(Error::BeyondTruncation {
                word: w.to_string(),
                order: self.order,
            });
        }
        Ok(())
    }

    pub fn set(&mut self, w: Word, value: Rational) -> Result<()> {
        self.check_word(&w)?;
        if value.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, value);
        }
        Ok(())
    }

    /// Coefficient of `w`; errors on words beyond the truncation order.
    pub fn coeff(&self, w: &Word) -> Result<Rational> {
        self.check_word(w)?;
        Ok(self.get(w))
    }

    /// Coefficient of `w` without any range check.
    pub(crate) fn get(&self, w: &Word) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn raw(&self) -> &Terms {
        &self.coeffs
    }

    fn check_compatible(&self, other: &NcSeries) -> Result<()> {
        if self.k != other.k || self.order != other.order {
            return Err(Error::Mismatch(format!(
                "series over (k={}, N={}) and (k={}, N={})",
                self.k, self.order, other.k, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &NcSeries) -> Result<NcSeries> {
        self.check_compatible(other)?;
        let mut coeffs = self.coeffs.clone();
        add_into(&mut coeffs, &other.coeffs, &Rational::one());
        Ok(NcSeries::from_raw(self.k, self.order, coeffs))
    }

    pub fn sub(&self, other: &NcSeries) -> Result<NcSeries> {
        self.check_compatible(other)?;
        let mut coeffs = self.coeffs.clone();
        add_into(&mut coeffs, &other.coeffs, &-Rational::one());
        Ok(NcSeries::from_raw(self.k, self.order, coeffs))
    }

    pub fn neg(&self) -> NcSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, t: &Rational) -> NcSeries {
        if t.is_zero() {
            return NcSeries::from_raw(self.k, self.order, Terms::new());
        }
        let coeffs = self.coeffs.iter().map(|(w, v)| (w.clone(), v * t)).collect();
        NcSeries::from_raw(self.k, self.order, coeffs)
    }

    /// Noncommutative product, truncated at the order.
    pub fn mul(&self, other: &NcSeries) -> Result<NcSeries> {
        self.check_compatible(other)?;
        let coeffs = mul_terms(&self.coeffs, &other.coeffs, self.order);
        Ok(NcSeries::from_raw(self.k, self.order, coeffs))
    }

    /// The series `g` with `(1 + self)(1 + g) = 1` in the truncated ring.
    pub fn inv_one_plus(&self) -> NcSeries {
        // g = -f - f g; each pass fixes one more degree.
        let minus_f: Terms = self.coeffs.iter().map(|(w, v)| (w.clone(), -v)).collect();
        let mut g = minus_f.clone();
        for _ in 1..self.order {
            let fg = mul_terms(&self.coeffs, &g, self.order);
            let mut next = minus_f.clone();
            add_into(&mut next, &fg, &-Rational::one());
            g = next;
        }
        NcSeries::from_raw(self.k, self.order, g)
    }

    /// `self(z_1 (1+g), ..., z_k (1+g))`, truncated at the order.
    pub fn dilate_substitute(&self, g: &NcSeries) -> Result<NcSeries> {
        self.check_compatible(g)?;
        let coeffs = dilate_terms(&self.coeffs, &g.coeffs, self.order);
        Ok(NcSeries::from_raw(self.k, self.order, coeffs))
    }

    /// Coefficientwise equality report: the first word (in word order)
    /// where the two series differ.
    pub fn first_difference(&self, other: &NcSeries) -> Option<Word> {
        let zero = Rational::zero();
        let mut words: Vec<&Word> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        words.sort();
        words.dedup();
        words.into_iter().find_map(|w| {
            let a = self.coeffs.get(w).unwrap_or(&zero);
            let b = other.coeffs.get(w).unwrap_or(&zero);
            (a != b).then(|| w.clone())
        })
    }
}

impl fmt::Debug for NcSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcSeries(k={}, N={}) {{", self.k, self.order)?;
        for (i, (w, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}: {v}")?;
        }
        f.write_str("}")
    }
}

fn add_into(acc: &mut Terms, other: &Terms, factor: &Rational) {
    for (w, v) in other {
        let entry = acc.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += v * factor;
        if entry.is_zero() {
            acc.remove(w);
        }
    }
}

fn mul_terms(a: &Terms, b: &Terms, max_len: usize) -> Terms {
    let mut out = Terms::new();
    for (u, x) in a {
        if u.len() >= max_len {
            // `a` is ordered by length, nothing further can fit.
            break;
        }
        let room = max_len - u.len();
        for (v, y) in b {
            if v.len() > room {
                break;
            }
            *out.entry(u.concat(v)).or_insert_with(Rational::zero) += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Substitutes `z_j -> z_j (1 + g)` by peeling off first letters:
/// `f = sum_j z_j (c_j + h_j)` gives `sum_j z_j (1+g) (c_j + D(h_j))`.
fn dilate_terms(f: &Terms, g: &Terms, max_len: usize) -> Terms {
    let mut out = Terms::new();
    if max_len == 0 {
        return out;
    }
    let mut by_first: BTreeMap<u8, (Rational, Terms)> = BTreeMap::new();
    for (w, v) in f {
        if w.len() > max_len {
            continue;
        }
        let (c, tail) = by_first
            .entry(w.0[0])
            .or_insert_with(|| (Rational::zero(), Terms::new()));
        if w.len() == 1 {
            *c += v;
        } else {
            tail.insert(Word::from_raw(&w.0[1..]), v.clone());
        }
    }
    for (letter, (c, tail)) in by_first {
        // z_j (1 + g), truncated.
        let head = Word::from_raw(&[letter]);
        let mut factor = Terms::new();
        factor.insert(head.clone(), Rational::one());
        for (v, y) in g {
            if v.len() + 1 > max_len {
                break;
            }
            factor.insert(head.concat(v), y.clone());
        }
        if !c.is_zero() {
            add_into(&mut out, &factor, &c);
        }
        if !tail.is_empty() && max_len >= 2 {
            let inner = dilate_terms(&tail, g, max_len - 1);
            let prod = mul_terms(&factor, &inner, max_len);
            add_into(&mut out, &prod, &Rational::one());
        }
    }
    out
}

/// Coefficient functional `Cf_w`.
pub fn cf(word: &Word, f: &NcSeries) -> Result<Rational> {
    f.coeff(word)
}

/// Generalized coefficient: product over blocks `V` of `Cf_{w|V}(f)`.
pub fn cf_partition(word: &Word, pi: &NcPartition, f: &NcSeries) -> Result<Rational> {
    check_partition(word, pi)?;
    f.check_word(word)?;
    let mut acc = Rational::one();
    for block in pi.blocks() {
        let c = f.get(&word.restrict(block));
        if c.is_zero() {
            return Ok(c);
        }
        acc *= c;
    }
    Ok(acc)
}

/// Mixed generalized coefficient: block `V` reads `f1` when `c(V) = 1` and
/// `f2` when `c(V) = 2`.
pub fn cf_mixed(
    word: &Word,
    pi: &NcPartition,
    colouring: &Colouring,
    f1: &NcSeries,
    f2: &NcSeries,
) -> Result<Rational> {
    check_partition(word, pi)?;
    f1.check_compatible(f2)?;
    f1.check_word(word)?;
    if colouring.len() != pi.len() {
        return Err(Error::Mismatch(format!(
            "colouring of {} blocks for a partition with {}",
            colouring.len(),
            pi.len()
        )));
    }
    let mut acc = Rational::one();
    for (b, block) in pi.blocks().iter().enumerate() {
        let series = if colouring.colour(b) == 1 { f1 } else { f2 };
        let c = series.get(&word.restrict(block));
        if c.is_zero() {
            return Ok(c);
        }
        acc *= c;
    }
    Ok(acc)
}

fn check_partition(word: &Word, pi: &NcPartition) -> Result<()> {
    if pi.n() != word.len() {
        return Err(Error::Mismatch(format!(
            "partition of {} elements against word {word}",
            pi.n()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn w(letters: &[usize]) -> Word {
        Word::new(letters, 3).unwrap()
    }

    fn series(k: usize, order: usize, terms: &[(&[usize], i64)]) -> NcSeries {
        NcSeries::from_terms(
            k,
            order,
            terms
                .iter()
                .map(|(l, v)| (Word::new(l, k).unwrap(), q(*v, 1))),
        )
        .unwrap()
    }

    #[test]
    fn word_order_is_length_first() {
        assert!(w(&[3]) < w(&[1, 1]));
        assert!(w(&[1, 2]) < w(&[2, 1]));
        assert_eq!(w(&[1, 2, 3]).restrict(&[1, 3]), w(&[1, 3]));
        assert!(Word::new(&[], 2).is_err());
        assert!(Word::new(&[3], 2).is_err());
        assert_eq!(words_up_to(2, 3).len(), 14);
    }

    #[test]
    fn linear_structure() {
        let z1 = NcSeries::variable(2, 3, 1).unwrap();
        let z2 = NcSeries::variable(2, 3, 2).unwrap();
        let s = z1.add(&z2).unwrap();
        assert_eq!(s.coeff(&Word::new(&[1], 2).unwrap()).unwrap(), q(1, 1));
        assert_eq!(s.coeff(&Word::new(&[2], 2).unwrap()).unwrap(), q(1, 1));
        assert!(s.scale(&q(0, 1)).is_zero());
        let sq = series(2, 3, &[(&[1, 1], 1)]).scale(&q(3, 2));
        assert_eq!(sq.coeff(&Word::new(&[1, 1], 2).unwrap()).unwrap(), q(3, 2));
        assert!(z1.add(&NcSeries::variable(2, 4, 1).unwrap()).is_err());
        assert!(z1.add(&NcSeries::variable(3, 3, 1).unwrap()).is_err());
    }

    #[test]
    fn products_do_not_commute() {
        let z1 = NcSeries::variable(2, 3, 1).unwrap();
        let z2 = NcSeries::variable(2, 3, 2).unwrap();
        assert_eq!(z1.mul(&z2).unwrap(), series(2, 3, &[(&[1, 2], 1)]));
        assert_eq!(z2.mul(&z1).unwrap(), series(2, 3, &[(&[2, 1], 1)]));
        let lhs = z1.add(&z2).unwrap().mul(&z1).unwrap();
        assert_eq!(lhs, series(2, 3, &[(&[1, 1], 1), (&[2, 1], 1)]));
        assert!(z1.mul(&NcSeries::zero(2, 3).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn geometric_inverse() {
        let z = NcSeries::variable(1, 4, 1).unwrap();
        let g = z.inv_one_plus();
        assert_eq!(
            g,
            series(1, 4, &[(&[1], -1), (&[1, 1], 1), (&[1, 1, 1], -1), (&[1, 1, 1, 1], 1)])
        );
        assert!(NcSeries::zero(2, 3).unwrap().inv_one_plus().is_zero());
    }

    #[test]
    fn dilation_examples() {
        let f = NcSeries::variable(2, 3, 1).unwrap();
        let g = NcSeries::variable(2, 3, 2).unwrap();
        assert_eq!(
            f.dilate_substitute(&g).unwrap(),
            series(2, 3, &[(&[1], 1), (&[1, 2], 1)])
        );
        assert_eq!(f.dilate_substitute(&NcSeries::zero(2, 3).unwrap()).unwrap(), f);
        let zz = series(1, 4, &[(&[1, 1], 1)]);
        let z = NcSeries::variable(1, 4, 1).unwrap();
        assert_eq!(
            zz.dilate_substitute(&z).unwrap(),
            series(1, 4, &[(&[1, 1], 1), (&[1, 1, 1], 2), (&[1, 1, 1, 1], 1)])
        );
    }

    #[test]
    fn coefficient_functionals() {
        let f = series(2, 3, &[(&[1, 2], 1)]);
        assert_eq!(cf(&Word::new(&[1, 2], 2).unwrap(), &f).unwrap(), q(1, 1));
        assert_eq!(cf(&Word::new(&[2, 1], 2).unwrap(), &f).unwrap(), q(0, 1));
        let long = Word::new(&[1, 1, 1, 1], 2).unwrap();
        assert!(matches!(cf(&long, &f), Err(Error::BeyondTruncation { .. })));
    }

    #[test]
    fn generalized_coefficients() {
        let f = series(3, 5, &[(&[1, 2, 3], 5), (&[3, 1], 7), (&[3, 1, 2, 2, 3], 11)]);
        let g = series(3, 5, &[(&[3, 1], -2), (&[1, 2, 3], 4)]);
        let word = w(&[1, 3, 1, 2, 3]);
        let pi: NcPartition = "{1,4,5}{2,3}".parse().unwrap();
        assert_eq!(cf_partition(&word, &pi, &f).unwrap(), q(35, 1));
        assert_eq!(
            cf_partition(&word, &NcPartition::one(5), &f).unwrap(),
            f.get(&word)
        );
        let c = Colouring::new(vec![1, 2]).unwrap();
        assert_eq!(cf_mixed(&word, &pi, &c, &f, &g).unwrap(), q(-10, 1));
        let c2 = Colouring::new(vec![2, 1]).unwrap();
        assert_eq!(cf_mixed(&word, &pi, &c2, &f, &g).unwrap(), q(28, 1));
        assert!(cf_partition(&w(&[1, 2]), &pi, &f).is_err());
        let units = series(3, 5, &[(&[1], 1), (&[2], 1), (&[3], 1)]);
        assert_eq!(cf_partition(&word, &NcPartition::zero(5), &units).unwrap(), q(1, 1));
    }
}
