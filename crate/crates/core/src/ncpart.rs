//! Non-crossing partitions of `{1, ..., n}`.
//!
//! Partitions are stored canonically: elements ascending inside each block,
//! blocks ordered by their minima. Structural equality on this form is the
//! only notion of equality used anywhere in the crate.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{domain, Error, Result};

/// Largest ground set `enumerate_nc` accepts unless told otherwise.
/// Catalan(14) is roughly 2.7 million partitions.
pub const DEFAULT_CEILING: usize = 14;

/// A non-crossing partition of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// Position of a block relative to the others.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Outer,
    Inner,
}

/// Assignment of a colour in `{1, 2}` to every block of a partition,
/// indexed by canonical block position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colouring(Vec<u8>);

impl Colouring {
    pub fn new(colours: Vec<u8>) -> Result<Self> {
        if let Some(c) = colours.iter().find(|&&c| c != 1 && c != 2) {
            return domain(format!("colour {c} is not in {{1, 2}}"));
        }
        Ok(Colouring(colours))
    }

    pub fn constant(blocks: usize, colour: u8) -> Result<Self> {
        Colouring::new(vec![colour; blocks])
    }

    /// All `2^blocks` colourings, in binary-counter order over the blocks
    /// (the first block is the least significant digit; digit 0 is colour 1).
    pub fn all(blocks: usize) -> impl Iterator<Item = Colouring> {
        assert!(blocks < 64, "too many blocks to enumerate colourings");
        (0u64..1u64 << blocks).map(move |code| {
            Colouring((0..blocks).map(|i| 1 + ((code >> i) & 1) as u8).collect())
        })
    }

    pub fn colour(&self, block: usize) -> u8 {
        self.0[block]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }
}

impl NcPartition {
    /// Validates and canonicalizes a block list.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return domain("ground set must be nonempty");
        }
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return domain("empty block");
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > n {
                    return domain(format!("element {x} outside 1..={n}"));
                }
                if seen[x] {
                    return domain(format!("element {x} appears twice"));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return domain(format!("element {x} is not covered"));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let p = NcPartition { n, blocks };
        if let Some((a, b)) = p.find_crossing() {
            return domain(format!(
                "blocks {} and {} cross",
                fmt_block(&p.blocks[a]),
                fmt_block(&p.blocks[b])
            ));
        }
        Ok(p)
    }

    /// Assumes `blocks` is already canonical and non-crossing.
    fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
        NcPartition { n, blocks }
    }

    /// `0_n`, all singletons.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        NcPartition::from_canonical(n, (1..=n).map(|x| vec![x]).collect())
    }

    /// `1_n`, a single block.
    pub fn one(n: usize) -> Self {
        assert!(n >= 1);
        NcPartition::from_canonical(n, vec![(1..=n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every element; entry 0 is unused.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.n + 1];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x] = b;
            }
        }
        labels
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    fn find_crossing(&self) -> Option<(usize, usize)> {
        let labels = self.labels();
        for (v, block) in self.blocks.iter().enumerate() {
            for pair in block.windows(2) {
                // Any block met strictly between two consecutive elements
                // of V must live entirely inside that window.
                for &w in &labels[pair[0] + 1..pair[1]] {
                    let inner = &self.blocks[w];
                    if inner[0] < pair[0] || inner[inner.len() - 1] > pair[1] {
                        return Some((v.min(w), v.max(w)));
                    }
                }
            }
        }
        None
    }

    pub fn is_inner(&self, block: usize) -> bool {
        let v = &self.blocks[block];
        let (lo, hi) = (v[0], v[v.len() - 1]);
        self.blocks
            .iter()
            .any(|w| w[0] < lo && w[w.len() - 1] > hi)
    }

    pub fn classify_blocks(&self) -> Vec<BlockKind> {
        (0..self.len())
            .map(|b| {
                if self.is_inner(b) {
                    BlockKind::Inner
                } else {
                    BlockKind::Outer
                }
            })
            .collect()
    }

    /// The inner/outer colouring: outer blocks get colour 1, inner blocks 2.
    pub fn outer_colouring(&self) -> Colouring {
        Colouring(
            self.classify_blocks()
                .into_iter()
                .map(|k| match k {
                    BlockKind::Outer => 1,
                    BlockKind::Inner => 2,
                })
                .collect(),
        )
    }

    pub fn outer_blocks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| !self.is_inner(b)).collect()
    }

    pub fn is_interval(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b[b.len() - 1] - b[0] + 1 == b.len())
    }

    fn check_same_n(&self, other: &NcPartition) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "partitions of {} and {} elements",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Reverse refinement: `self <= other` iff every block of `other` is a
    /// union of blocks of `self`.
    pub fn leq(&self, other: &NcPartition) -> Result<bool> {
        self.check_same_n(other)?;
        let labels = other.labels();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| labels[x] == labels[b[0]])))
    }

    /// `self << other`: `self <= other` and each block of `other` has its
    /// minimum and maximum in one block of `self`.
    pub fn ll(&self, other: &NcPartition) -> Result<bool> {
        if !self.leq(other)? {
            return Ok(false);
        }
        let labels = self.labels();
        Ok(other
            .blocks
            .iter()
            .all(|w| labels[w[0]] == labels[w[w.len() - 1]]))
    }

    /// The unique interval partition `rho` with `self << rho`: each outer
    /// block is replaced by the integer interval it spans.
    pub fn interval_hull(&self) -> NcPartition {
        let blocks = self
            .outer_blocks()
            .into_iter()
            .map(|b| {
                let v = &self.blocks[b];
                (v[0]..=v[v.len() - 1]).collect()
            })
            .collect();
        NcPartition::from_canonical(self.n, blocks)
    }

    /// Indices of the `rho`-special blocks of `self`: blocks sharing both
    /// their minimum and maximum with a block of `rho`. Requires
    /// `self << rho`.
    pub fn special_blocks(&self, rho: &NcPartition) -> Result<BTreeSet<usize>> {
        if !self.ll(rho)? {
            return domain(format!("{self} is not << {rho}"));
        }
        let ends: BTreeSet<(usize, usize)> = rho
            .blocks
            .iter()
            .map(|w| (w[0], w[w.len() - 1]))
            .collect();
        Ok((0..self.len())
            .filter(|&b| {
                let v = &self.blocks[b];
                ends.contains(&(v[0], v[v.len() - 1]))
            })
            .collect())
    }

    /// Colouring with colour 1 on `rho`-special blocks and 2 elsewhere.
    pub fn special_colouring(&self, rho: &NcPartition) -> Result<Colouring> {
        let special = self.special_blocks(rho)?;
        Ok(Colouring(
            (0..self.len())
                .map(|b| if special.contains(&b) { 1 } else { 2 })
                .collect(),
        ))
    }

    /// Restricts `self` to every block of `rho` (requires `self <= rho`),
    /// relabelling each restriction onto `{1, ..., |W|}`.
    pub fn factor_through(&self, rho: &NcPartition) -> Result<Vec<NcPartition>> {
        if !self.leq(rho)? {
            return domain(format!("{self} is not <= {rho}"));
        }
        let labels = self.labels();
        Ok(rho
            .blocks
            .iter()
            .map(|w| {
                let mut local: Vec<Vec<usize>> = Vec::new();
                let mut seen: Vec<usize> = Vec::new();
                for (pos, &x) in w.iter().enumerate() {
                    match seen.iter().position(|&l| l == labels[x]) {
                        Some(i) => local[i].push(pos + 1),
                        None => {
                            seen.push(labels[x]);
                            local.push(vec![pos + 1]);
                        }
                    }
                }
                NcPartition::from_canonical(w.len(), local)
            })
            .collect())
    }

    /// Inverse of [`factor_through`](Self::factor_through).
    pub fn glue(rho: &NcPartition, parts: &[NcPartition]) -> Result<NcPartition> {
        if parts.len() != rho.len() {
            return Err(Error::Mismatch(format!(
                "{} parts for {} blocks",
                parts.len(),
                rho.len()
            )));
        }
        let mut blocks = Vec::new();
        for (w, part) in rho.blocks.iter().zip(parts) {
            if part.n != w.len() {
                return Err(Error::Mismatch(format!(
                    "part on {} elements for a block of size {}",
                    part.n,
                    w.len()
                )));
            }
            for b in &part.blocks {
                blocks.push(b.iter().map(|&p| w[p - 1]).collect());
            }
        }
        NcPartition::new(rho.n, blocks)
    }
}

fn fmt_block(b: &[usize]) -> String {
    let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            f.write_str(&fmt_block(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPartition({self})")
    }
}

/// Parses the debug form `{1,4,5}{2,3}`; `n` is the largest element.
impl FromStr for NcPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('{') else {
                return domain(format!("expected '{{' in {s:?}"));
            };
            let Some(end) = body.find('}') else {
                return domain(format!("unterminated block in {s:?}"));
            };
            let block = body[..end]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Domain(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = body[end + 1..].trim_start();
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        NcPartition::new(n, blocks)
    }
}

/// All non-crossing partitions of `{1, ..., n}` in canonical order
/// (lexicographic on the block lists), with the default ceiling.
pub fn enumerate_nc(n: usize) -> Result<Vec<NcPartition>> {
    enumerate_nc_with_ceiling(n, DEFAULT_CEILING)
}

pub fn enumerate_nc_with_ceiling(n: usize, ceiling: usize) -> Result<Vec<NcPartition>> {
    check_ground(n, ceiling)?;
    // Partitions of {1..len} for every len <= n; a gap of length len starting
    // at s is the shifted copy.
    let mut by_len: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new()]];
    for len in 1..=n {
        let mut out = Vec::new();
        // Other members of the block containing 1 are chosen from 2..=len.
        for mask in 0u32..1u32 << (len - 1) {
            let mut first = vec![1];
            first.extend((0..len - 1).filter(|i| mask >> i & 1 == 1).map(|i| i + 2));
            let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![first.clone()]];
            let mut bounds: Vec<(usize, usize)> = first.windows(2).map(|w| (w[0], w[1])).collect();
            bounds.push((first[first.len() - 1], len + 1));
            for (lo, hi) in bounds {
                let gap = hi - lo - 1;
                if gap == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(combos.len() * by_len[gap].len());
                for partial in &combos {
                    for sub in &by_len[gap] {
                        let mut p = partial.clone();
                        p.extend(sub.iter().map(|b| b.iter().map(|x| x + lo).collect()));
                        next.push(p);
                    }
                }
                combos = next;
            }
            for mut p in combos {
                p.sort_unstable_by_key(|b| b[0]);
                out.push(p);
            }
        }
        by_len.push(out);
    }
    let mut all: Vec<NcPartition> = by_len
        .pop()
        .unwrap()
        .into_iter()
        .map(|b| NcPartition::from_canonical(n, b))
        .collect();
    all.sort_unstable();
    Ok(all)
}

/// All `2^(n-1)` interval partitions, in canonical order.
pub fn interval_partitions(n: usize) -> Result<Vec<NcPartition>> {
    check_ground(n, DEFAULT_CEILING)?;
    let mut all: Vec<NcPartition> = (0u32..1u32 << (n - 1))
        .map(|cuts| {
            let mut blocks = vec![vec![1]];
            for x in 2..=n {
                if cuts >> (x - 2) & 1 == 1 {
                    blocks.push(vec![x]);
                } else {
                    blocks.last_mut().unwrap().push(x);
                }
            }
            NcPartition::from_canonical(n, blocks)
        })
        .collect();
    all.sort_unstable();
    Ok(all)
}

/// Partitions `pi` of `{1..n}` with `pi << 1_n`, i.e. 1 and n in one block.
pub fn irreducible_nc(n: usize) -> Result<Vec<NcPartition>> {
    Ok(enumerate_nc(n)?
        .into_iter()
        .filter(|p| p.block_of(1) == p.block_of(n))
        .collect())
}

type SharedCache = HashMap<(Family, usize), Arc<Vec<NcPartition>>>;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Family {
    All,
    Irreducible,
    Interval,
}

/// Ground sets up to this size have their partition lists memoized.
const SHARED_MAX: usize = 10;

fn shared(family: Family, n: usize) -> Result<Arc<Vec<NcPartition>>> {
    let build = || match family {
        Family::All => enumerate_nc(n),
        Family::Irreducible => irreducible_nc(n),
        Family::Interval => interval_partitions(n),
    };
    if n > SHARED_MAX {
        return build().map(Arc::new);
    }
    static CACHE: OnceLock<Mutex<SharedCache>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&(family, n)) {
        return Ok(Arc::clone(hit));
    }
    let list = Arc::new(build()?);
    cache
        .lock()
        .expect("cache lock")
        .insert((family, n), Arc::clone(&list));
    Ok(list)
}

/// Memoized [`enumerate_nc`].
pub(crate) fn shared_nc(n: usize) -> Result<Arc<Vec<NcPartition>>> {
    shared(Family::All, n)
}

/// Memoized [`irreducible_nc`].
pub(crate) fn shared_irreducible(n: usize) -> Result<Arc<Vec<NcPartition>>> {
    shared(Family::Irreducible, n)
}

/// Memoized [`interval_partitions`].
pub(crate) fn shared_intervals(n: usize) -> Result<Arc<Vec<NcPartition>>> {
    shared(Family::Interval, n)
}

fn check_ground(n: usize, ceiling: usize) -> Result<()> {
    if n == 0 {
        return domain("ground set size must be at least 1");
    }
    if n > ceiling {
        return domain(format!("ground set size {n} exceeds ceiling {ceiling}"));
    }
    Ok(())
}
