//! Canonical enumeration of set partitions, their even/noncrossing classes,
//! and odd Łukasiewicz paths, with the bijection and statistics used by the
//! moment formulas.
//!
//! Enumerators return fully materialized, deterministically ordered lists and
//! carry hard size guards; this module is desk-scale by design.

pub mod partitions;
pub mod paths;

pub use partitions::{
    bell_number, coarsenings, enumerate_even_partitions, enumerate_nc_even, enumerate_partitions,
    SetPartition, MAX_PARTITION_SIZE,
};
pub use paths::{
    enumerate_luk_odd, nc_to_path, path_to_nc, LukPath, PathStats, MAX_PATH_HALF_LENGTH,
};

/// Errors from the combinatorial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinError {
    #[error("partition size {n} out of range (1..={max})")]
    SizeOutOfRange { n: usize, max: usize },
    #[error("even classes need an even ground-set size, got {n}")]
    OddSizeForEvenClass { n: usize },
    #[error("restricted growth constraint violated at position {position}")]
    InvalidRgs { position: usize },
    #[error("blocks do not form a partition of the ground set")]
    InvalidBlocks,
    #[error("a set partition needs at least one element")]
    EmptyPartition,
    #[error("step {position} has rise below -1")]
    InvalidPathStep { position: usize },
    #[error("path dips below the axis at step {position}")]
    PathBelowAxis { position: usize },
    #[error("path does not return to height 0")]
    PathDoesNotReturn,
    #[error("input partition is not noncrossing")]
    NotNoncrossing,
}

/// Fuss-Catalan number `(1/(2k+1)) C(3k, k)`: the size of both
/// `NC_even(2k)` and `L_odd(2k)`. Independent counting oracle for tests.
pub fn fuss_catalan(k: usize) -> u64 {
    // C(3k, k) / (2k + 1), exact in u128 for the desk-scale range.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (3 * k - i) as u128;
        den *= (i + 1) as u128;
    }
    let c = num / den;
    (c / (2 * k as u128 + 1)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuss_catalan_values() {
        let expect = [1u64, 3, 12, 55, 273, 1428, 7752];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(fuss_catalan(i + 1), e);
        }
    }

    #[test]
    fn path_identities_from_structure() {
        // Total rise balance and half-length identity for every odd path.
        for k in 1..=5 {
            for p in enumerate_luk_odd(2 * k).unwrap() {
                let st = p.stats();
                let weighted: usize = st
                    .up_count_by_rise
                    .iter()
                    .map(|(&rise, &count)| rise * count)
                    .sum();
                assert_eq!(weighted, st.down_steps);
                let s_weighted: usize = st
                    .up_count_by_rise
                    .iter()
                    .map(|(&rise, &count)| (rise + 1) / 2 * count)
                    .sum();
                assert_eq!(s_weighted, k);
            }
        }
    }

    #[test]
    fn bijection_is_injective_onto_paths() {
        for k in 1..=5 {
            let ncs = enumerate_nc_even(2 * k).unwrap();
            let mut images: Vec<_> = ncs.iter().map(|p| nc_to_path(p).unwrap()).collect();
            let total = images.len();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), total);
            let mut paths = enumerate_luk_odd(2 * k).unwrap();
            paths.sort();
            assert_eq!(images, paths);
        }
    }

    #[test]
    fn height_parity_correspondence() {
        // Down steps from odd height sit at even positions, and vice versa.
        for k in 1..=4 {
            for pi in enumerate_nc_even(2 * k).unwrap() {
                let path = nc_to_path(&pi).unwrap();
                let mut h: i64 = 0;
                for (i, &r) in path.rises().iter().enumerate() {
                    let position = i + 1;
                    if r == -1 {
                        if h % 2 == 1 {
                            assert_eq!(position % 2, 0, "odd-height down step at odd position");
                        } else {
                            assert_eq!(position % 2, 1, "even-height down step at even position");
                        }
                    }
                    h += r as i64;
                }
            }
        }
    }
}
