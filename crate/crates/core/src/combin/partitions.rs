//! Set partitions in restricted-growth-string form, with the even and
//! noncrossing classes and the coarsening lattice.

use super::CombinError;

/// Hard ceiling on the partition size accepted by the enumerators.
pub const MAX_PARTITION_SIZE: usize = 14;

/// A set partition of `[n] = {1, ..., n}` stored as a restricted growth
/// string: `rgs[0] = 0` and `rgs[i] <= 1 + max(rgs[..i])`. Block `b` consists
/// of the positions carrying value `b`; blocks are therefore ordered by their
/// minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    /// Validates the restricted-growth constraint.
    pub fn from_rgs(rgs: Vec<u8>) -> Result<SetPartition, CombinError> {
        if rgs.is_empty() {
            return Err(CombinError::EmptyPartition);
        }
        let mut max_seen: i32 = -1;
        for (i, &v) in rgs.iter().enumerate() {
            if (v as i32) > max_seen + 1 {
                return Err(CombinError::InvalidRgs { position: i });
            }
            max_seen = max_seen.max(v as i32);
        }
        if rgs[0] != 0 {
            return Err(CombinError::InvalidRgs { position: 0 });
        }
        Ok(SetPartition { rgs })
    }

    /// Builds from explicit blocks over `[n]` (1-based elements).
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<SetPartition, CombinError> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e == 0 || e > n || owner[e - 1] != usize::MAX {
                    return Err(CombinError::InvalidBlocks);
                }
                owner[e - 1] = b;
            }
        }
        if owner.iter().any(|&o| o == usize::MAX) {
            return Err(CombinError::InvalidBlocks);
        }
        // Relabel block ids in order of first appearance to get the rgs.
        let mut relabel = vec![usize::MAX; blocks.len()];
        let mut next = 0u8;
        let mut rgs = Vec::with_capacity(n);
        for &o in &owner {
            if relabel[o] == usize::MAX {
                relabel[o] = next as usize;
                next += 1;
            }
            rgs.push(relabel[o] as u8);
        }
        SetPartition::from_rgs(rgs)
    }

    pub fn size(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    /// Number of blocks `#(pi)`.
    pub fn block_count(&self) -> usize {
        self.rgs.iter().copied().max().unwrap() as usize + 1
    }

    /// Blocks as sorted 1-based element lists, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &v) in self.rgs.iter().enumerate() {
            blocks[v as usize].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.block_count()];
        for &v in &self.rgs {
            sizes[v as usize] += 1;
        }
        sizes
    }

    /// All blocks have even cardinality.
    pub fn is_even(&self) -> bool {
        self.block_sizes().iter().all(|s| s % 2 == 0)
    }

    /// Noncrossing: no `a < b < c < d` with `a, c` in one block and `b, d` in
    /// another. Checked pairwise on blocks: two blocks cross exactly when
    /// their merged element order alternates at least three times.
    pub fn is_noncrossing(&self) -> bool {
        let blocks = self.blocks();
        for i in 0..blocks.len() {
            for j in (i + 1)..blocks.len() {
                if blocks_cross(&blocks[i], &blocks[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of blocks whose smallest element is even.
    pub fn even_stat(&self) -> usize {
        let mut seen = vec![false; self.block_count()];
        let mut count = 0;
        for (i, &v) in self.rgs.iter().enumerate() {
            if !seen[v as usize] {
                seen[v as usize] = true;
                if (i + 1) % 2 == 0 {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Two disjoint sorted blocks cross iff scanning their union in increasing
/// order switches ownership at least three times.
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let mut switches = 0;
    let mut last: Option<bool> = None; // true = element of `a`
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => x < y,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => unreachable!(),
        };
        if last != Some(take_a) {
            if last.is_some() {
                switches += 1;
                if switches >= 3 {
                    return true;
                }
            }
            last = Some(take_a);
        }
        if take_a {
            i += 1;
        } else {
            j += 1;
        }
    }
    false
}

fn check_size(n: usize) -> Result<(), CombinError> {
    if n == 0 || n > MAX_PARTITION_SIZE {
        return Err(CombinError::SizeOutOfRange {
            n,
            max: MAX_PARTITION_SIZE,
        });
    }
    Ok(())
}

/// Visits every restricted growth string of length `n` in lexicographic
/// order without materializing the list.
pub(crate) fn visit_partitions(n: usize, mut visit: impl FnMut(&[u8])) {
    // Iterative successor walk over restricted growth strings.
    let mut rgs = vec![0u8; n];
    let mut maxes = vec![0u8; n]; // maxes[i] = 1 + max(rgs[..i]), maxes[0] = 0... use shifted form
    // maxes[i] holds max(rgs[..=i]) for the current string.
    loop {
        visit(&rgs);
        // Find rightmost position that can be incremented.
        let mut i = n;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            let prev_max = maxes[i - 1];
            if rgs[i] <= prev_max {
                break;
            }
        }
        rgs[i] += 1;
        maxes[i] = maxes[i - 1].max(rgs[i]);
        for j in (i + 1)..n {
            rgs[j] = 0;
            maxes[j] = maxes[j - 1];
        }
    }
}

/// All set partitions of `[n]`, lexicographic by restricted growth string.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>, CombinError> {
    check_size(n)?;
    let mut out = Vec::new();
    visit_partitions(n, |rgs| out.push(SetPartition { rgs: rgs.to_vec() }));
    Ok(out)
}

/// Even set partitions of `[2k]` (all block sizes even), filtered from the
/// full enumeration, in the same order.
pub fn enumerate_even_partitions(n: usize) -> Result<Vec<SetPartition>, CombinError> {
    check_size(n)?;
    if n % 2 != 0 {
        return Err(CombinError::OddSizeForEvenClass { n });
    }
    let mut out = Vec::new();
    let mut sizes = vec![0u8; n];
    visit_partitions(n, |rgs| {
        let k = *rgs.iter().max().unwrap() as usize + 1;
        sizes[..k].fill(0);
        for &v in rgs {
            sizes[v as usize] += 1;
        }
        if sizes[..k].iter().all(|s| s % 2 == 0) {
            out.push(SetPartition { rgs: rgs.to_vec() });
        }
    });
    Ok(out)
}

/// Noncrossing even set partitions of `[2k]`, filtered from the full
/// enumeration, in the same order.
pub fn enumerate_nc_even(n: usize) -> Result<Vec<SetPartition>, CombinError> {
    let even = enumerate_even_partitions(n)?;
    Ok(even.into_iter().filter(|p| p.is_noncrossing()).collect())
}

/// All coarsenings `pi >= sigma` (every block of `sigma` contained in a block
/// of `pi`), computed by partitioning `sigma`'s block set and merging. The
/// result has `Bell(#(sigma))` entries and contains `sigma` itself.
pub fn coarsenings(sigma: &SetPartition) -> Vec<SetPartition> {
    let k = sigma.block_count();
    let n = sigma.size();
    let mut out = Vec::new();
    visit_partitions(k, |grouping| {
        // grouping[b] = group of sigma-block b; merge into a partition of [n].
        let mut rgs = vec![0u8; n];
        let mut relabel = vec![u8::MAX; k];
        let mut next = 0u8;
        for (i, &v) in sigma.rgs.iter().enumerate() {
            let g = grouping[v as usize];
            if relabel[g as usize] == u8::MAX {
                relabel[g as usize] = next;
                next += 1;
            }
            rgs[i] = relabel[g as usize];
        }
        out.push(SetPartition { rgs });
    });
    out
}

/// Bell number (count of set partitions), as an exact check for tests and
/// guards. Computed by the triangle recurrence.
pub fn bell_number(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    *row.last().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_element() {
        let all = enumerate_partitions(1).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].blocks(), vec![vec![1]]);
    }

    #[test]
    fn counts_match_bell_numbers() {
        for n in 1..=8 {
            let all = enumerate_partitions(n).unwrap();
            assert_eq!(all.len() as u64, bell_number(n), "n = {n}");
        }
        assert_eq!(enumerate_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(4).unwrap().len(), 15);
    }

    #[test]
    fn lexicographic_order() {
        let all = enumerate_partitions(3).unwrap();
        let rgs: Vec<&[u8]> = all.iter().map(|p| p.rgs()).collect();
        assert_eq!(
            rgs,
            vec![
                &[0, 0, 0][..],
                &[0, 0, 1][..],
                &[0, 1, 0][..],
                &[0, 1, 1][..],
                &[0, 1, 2][..],
            ]
        );
    }

    #[test]
    fn size_guard() {
        assert!(enumerate_partitions(0).is_err());
        assert!(enumerate_partitions(15).is_err());
    }

    #[test]
    fn even_partitions_of_four() {
        let even = enumerate_even_partitions(4).unwrap();
        assert_eq!(even.len(), 4);
        let blocks: Vec<_> = even.iter().map(|p| p.blocks()).collect();
        assert!(blocks.contains(&vec![vec![1, 2, 3, 4]]));
        assert!(blocks.contains(&vec![vec![1, 2], vec![3, 4]]));
        assert!(blocks.contains(&vec![vec![1, 3], vec![2, 4]]));
        assert!(blocks.contains(&vec![vec![1, 4], vec![2, 3]]));
    }

    #[test]
    fn noncrossing_filter() {
        let nc = enumerate_nc_even(4).unwrap();
        assert_eq!(nc.len(), 3);
        assert!(nc.iter().all(|p| p.blocks() != vec![vec![1, 3], vec![2, 4]]));
        // Fuss-Catalan count for 2k = 6: (1/7) C(9,3) = 12.
        assert_eq!(enumerate_nc_even(6).unwrap().len(), 12);
    }

    #[test]
    fn crossing_detection() {
        let crossing = SetPartition::from_blocks(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        assert!(!crossing.is_noncrossing());
        let nested = SetPartition::from_blocks(4, &[vec![1, 4], vec![2, 3]]).unwrap();
        assert!(nested.is_noncrossing());
    }

    #[test]
    fn coarsenings_examples() {
        // {1|2} has two coarsenings.
        let s = SetPartition::from_rgs(vec![0, 1]).unwrap();
        let c = coarsenings(&s);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&s));
        assert!(c.contains(&SetPartition::from_rgs(vec![0, 0]).unwrap()));
        // {12|34} -> itself and {1234}.
        let s = SetPartition::from_rgs(vec![0, 0, 1, 1]).unwrap();
        let c = coarsenings(&s);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&SetPartition::from_rgs(vec![0, 0, 0, 0]).unwrap()));
        // {1|2|3} -> Bell(3) = 5 coarsenings.
        let s = SetPartition::from_rgs(vec![0, 1, 2]).unwrap();
        assert_eq!(coarsenings(&s).len(), 5);
    }

    #[test]
    fn coarsenings_contain_extremes() {
        for sigma in enumerate_partitions(5).unwrap() {
            let c = coarsenings(&sigma);
            assert_eq!(c.len() as u64, bell_number(sigma.block_count()));
            assert!(c.contains(&sigma));
            let one_block = SetPartition::from_rgs(vec![0; 5]).unwrap();
            assert!(c.contains(&one_block));
        }
    }

    #[test]
    fn even_stat_examples() {
        let p = SetPartition::from_blocks(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.even_stat(), 0);
        let p = SetPartition::from_blocks(4, &[vec![1, 4], vec![2, 3]]).unwrap();
        assert_eq!(p.even_stat(), 1);
        let p = SetPartition::from_blocks(4, &[vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(p.even_stat(), 0);
    }
}
