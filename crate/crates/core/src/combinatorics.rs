//! Exact integer combinatorics and dense indexing of s-subsets and s-tuples.
//!
//! Subsets of `{0, .., n-1}` are ranked in colexicographic order:
//! `rank(S) = sum_i C(S[i], i + 1)` over the sorted elements. The rank of a
//! subset does not depend on `n`, so subsets drawn from a prefix `[0, m)`
//! occupy the contiguous block `[0, C(m, s))`.
//!
//! Tuples with pairwise distinct coordinates are ranked with a mixed-radix
//! (Lehmer) code onto `[0, (n)_s)`.

use thiserror::Error;

/// Default cap on the number of s-sets a component labeling may allocate.
pub const DEFAULT_INDEX_SPACE_CAP: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("integer overflow evaluating {0}")]
    Overflow(String),
    #[error("malformed set {0:?}: elements must be strictly increasing")]
    MalformedSet(Vec<u32>),
    #[error("malformed tuple {0:?}: coordinates must be pairwise distinct and below n")]
    MalformedTuple(Vec<u32>),
    #[error("index {index} out of range (universe size {size})")]
    OutOfRange { index: u64, size: u128 },
    #[error("index space C({n},{s}) = {size} exceeds cap {cap}")]
    CapExceeded { n: u64, s: u64, size: u128, cap: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// Colexicographic rank of a sorted subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetRank(pub u64);

/// Mixed-radix rank of a distinct-coordinate tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleRank(pub u64);

/// `C(n, k)` computed exactly; 0 when `k > n`.
pub fn binom(n: u64, k: u64) -> Result<u128, CombError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is always an integer; split by gcd to delay overflow.
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        let g2 = gcd(num, d);
        let (num, d) = (num / g2, d / g2);
        debug_assert_eq!(d, 1);
        acc = a
            .checked_mul(num)
            .ok_or_else(|| CombError::Overflow(format!("C({n},{k})")))?;
    }
    Ok(acc)
}

/// `C(n, k)` narrowed to `u64`.
pub fn binom_u64(n: u64, k: u64) -> Result<u64, CombError> {
    let v = binom(n, k)?;
    u64::try_from(v).map_err(|_| CombError::Overflow(format!("C({n},{k}) as u64")))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(n)_j = n (n-1) ... (n-j+1)`; 1 when `j = 0`.
pub fn falling_factorial(n: u64, j: u64) -> Result<u128, CombError> {
    if j > n {
        return Err(CombError::Invalid(format!("falling factorial ({n})_{j} needs j <= n")));
    }
    (0..j).try_fold(1u128, |acc, i| {
        acc.checked_mul((n - i) as u128)
            .ok_or_else(|| CombError::Overflow(format!("({n})_{j}")))
    })
}

/// Rejects `(n, s)` when `C(n, s)` exceeds `cap`; returns the universe size otherwise.
pub fn check_index_space(n: u64, s: u64, cap: u64) -> Result<u64, CombError> {
    let size = binom(n, s)?;
    if size > cap as u128 {
        return Err(CombError::CapExceeded { n, s, size, cap });
    }
    Ok(size as u64)
}

fn check_sorted(set: &[u32]) -> Result<(), CombError> {
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CombError::MalformedSet(set.to_vec()));
    }
    Ok(())
}

/// Colex rank of a strictly increasing set.
pub fn rank_subset(set: &[u32]) -> Result<SubsetRank, CombError> {
    check_sorted(set)?;
    let mut acc: u128 = 0;
    for (i, &x) in set.iter().enumerate() {
        acc += binom(x as u64, i as u64 + 1)?;
    }
    u64::try_from(acc)
        .map(SubsetRank)
        .map_err(|_| CombError::Overflow(format!("rank of {set:?}")))
}

/// Inverse of [`rank_subset`] for sets of size `s`.
pub fn unrank_subset(idx: SubsetRank, s: u32) -> Result<Vec<u32>, CombError> {
    let mut rest = idx.0 as u128;
    let mut out = vec![0u32; s as usize];
    // Upper bound for the top element: C(x, s) <= idx forces x < s + idx.
    let mut hi: u64 = s as u64 + idx.0;
    for k in (1..=s as u64).rev() {
        // largest x in [k-1, hi) with C(x, k) <= rest
        let (mut lo, mut top) = (k - 1, hi);
        while top - lo > 1 {
            let mid = lo + (top - lo) / 2;
            match binom(mid, k) {
                Ok(v) if v <= rest => lo = mid,
                _ => top = mid,
            }
        }
        rest -= binom(lo, k)?;
        out[k as usize - 1] = u32::try_from(lo)
            .map_err(|_| CombError::OutOfRange { index: idx.0, size: u128::MAX })?;
        hi = lo;
    }
    Ok(out)
}

/// Precomputed table of `C(x, j)` for `x <= n`, `j <= k_max`, used on hot paths.
#[derive(Debug, Clone)]
pub struct Colex {
    n: u32,
    k_max: u32,
    table: Vec<u64>,
}

impl Colex {
    /// Fails when some `C(x, j)` in range does not fit in `u64`.
    pub fn new(n: u32, k_max: u32) -> Result<Self, CombError> {
        let width = k_max as usize + 1;
        let mut table = vec![0u64; (n as usize + 1) * width];
        for x in 0..=n as usize {
            table[x * width] = 1;
            for j in 1..width.min(x + 1) {
                let a = table[(x - 1) * width + j - 1];
                let b = if j < x { table[(x - 1) * width + j] } else { 0 };
                table[x * width + j] = a
                    .checked_add(b)
                    .ok_or_else(|| CombError::Overflow(format!("C({x},{j})")))?;
            }
        }
        Ok(Self { n, k_max, table })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn choose(&self, x: u32, j: u32) -> u64 {
        debug_assert!(x <= self.n && j <= self.k_max);
        self.table[x as usize * (self.k_max as usize + 1) + j as usize]
    }

    /// Colex rank of a sorted set with elements below `n`. Not validated.
    #[inline]
    pub fn rank(&self, set: &[u32]) -> u64 {
        set.iter()
            .enumerate()
            .map(|(i, &x)| self.choose(x, i as u32 + 1))
            .sum()
    }

    /// Writes the set of size `out.len()` with colex rank `idx`.
    pub fn unrank_into(&self, mut idx: u64, out: &mut [u32]) {
        let mut hi = self.n;
        for k in (1..=out.len() as u32).rev() {
            // largest x < hi with C(x, k) <= idx
            let (mut lo, mut top) = (k - 1, hi);
            while top - lo > 1 {
                let mid = lo + (top - lo) / 2;
                if self.choose(mid, k) <= idx {
                    lo = mid;
                } else {
                    top = mid;
                }
            }
            idx -= self.choose(lo, k);
            out[k as usize - 1] = lo;
            hi = lo;
        }
    }

    pub fn unrank(&self, idx: u64, k: u32) -> Vec<u32> {
        let mut out = vec![0; k as usize];
        self.unrank_into(idx, &mut out);
        out
    }
}

/// Mixed-radix rank of a tuple of distinct coordinates below `n`.
pub fn rank_tuple(tuple: &[u32], n: u32) -> Result<TupleRank, CombError> {
    let mut acc: u128 = 0;
    for (i, &x) in tuple.iter().enumerate() {
        if x >= n || tuple[..i].contains(&x) {
            return Err(CombError::MalformedTuple(tuple.to_vec()));
        }
        let digit = x - tuple[..i].iter().filter(|&&y| y < x).count() as u32;
        acc = acc * (n - i as u32) as u128 + digit as u128;
    }
    u64::try_from(acc)
        .map(TupleRank)
        .map_err(|_| CombError::Overflow(format!("tuple rank of {tuple:?}")))
}

/// Inverse of [`rank_tuple`].
pub fn unrank_tuple(idx: TupleRank, s: u32, n: u32) -> Result<Vec<u32>, CombError> {
    let size = falling_factorial(n as u64, s as u64)?;
    if idx.0 as u128 >= size {
        return Err(CombError::OutOfRange { index: idx.0, size });
    }
    let mut digits = vec![0u32; s as usize];
    let mut rest = idx.0;
    for i in (0..s as usize).rev() {
        let radix = (n - i as u32) as u64;
        digits[i] = (rest % radix) as u32;
        rest /= radix;
    }
    let mut out = Vec::with_capacity(s as usize);
    for d in digits {
        // d-th smallest value not yet used
        let mut seen = 0;
        let x = (0..n)
            .find(|v| {
                if out.contains(v) {
                    return false;
                }
                seen += 1;
                seen == d + 1
            })
            .expect("digit below radix");
        out.push(x);
    }
    Ok(out)
}

/// Visits every `k`-subset of `items` in colex order (of positions).
pub fn for_each_combination(items: &[u32], k: usize, mut f: impl FnMut(&[u32])) {
    let m = items.len();
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<u32> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // colex successor: bump the lowest position that can move
        let mut i = 0;
        while i < k && (if i + 1 < k { idx[i] + 1 == idx[i + 1] } else { idx[i] + 1 == m }) {
            i += 1;
        }
        if i == k {
            return;
        }
        idx[i] += 1;
        buf[i] = items[idx[i]];
        for j in 0..i {
            idx[j] = j;
            buf[j] = items[j];
        }
    }
}

/// Visits every `k`-permutation (ordered, distinct) of `items`.
pub fn for_each_arrangement(items: &[u32], k: usize, mut f: impl FnMut(&[u32])) {
    fn go(items: &[u32], k: usize, used: &mut Vec<bool>, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                buf.push(items[i]);
                go(items, k, used, buf, f);
                buf.pop();
                used[i] = false;
            }
        }
    }
    if k <= items.len() {
        go(items, k, &mut vec![false; items.len()], &mut Vec::with_capacity(k), &mut f);
    }
}
