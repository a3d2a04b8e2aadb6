//! Small bitmask helpers shared by the geometry, group and design code.

/// Binomial coefficient `n choose k`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All-ones mask on the low `m` bits.
#[inline]
pub fn full_mask(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// Iterates the `k`-subsets of `{0, .., m-1}` as bitmasks in ascending
/// numeric order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u32>,
    limit: u32,
}

pub fn ksubsets(m: usize, k: usize) -> KSubsets {
    let next = if k > m { None } else { Some(full_mask(k)) };
    KSubsets {
        next,
        limit: full_mask(m),
    }
}

impl Iterator for KSubsets {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let cur = self.next?;
        if cur > self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                Some((((r ^ cur) >> 2) / c) | r)
            }
        };
        Some(cur)
    }
}

/// Moves bit `i` of `mask` to bit `perm[i]`.
#[inline]
pub fn permute_mask(mask: u32, perm: &[u8]) -> u32 {
    let mut out = 0u32;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << perm[i];
    }
    out
}

/// Indices of the set bits, ascending.
pub fn bit_indices(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// The `count` lowest set bits of `mask`.
#[inline]
pub fn lowest_bits(mask: u32, count: u32) -> u32 {
    let mut out = 0;
    let mut rest = mask;
    for _ in 0..count {
        let low = rest & rest.wrapping_neg();
        out |= low;
        rest ^= low;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 4), 495);
        assert_eq!(binomial(11, 2), 55);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(24, 12), 2_704_156);
    }

    #[test]
    fn ksubsets_are_ascending_and_complete() {
        for m in 0..=8 {
            for k in 0..=m + 1 {
                let v: Vec<u32> = ksubsets(m, k).collect();
                assert_eq!(v.len() as u64, binomial(m as u64, k as u64), "m={m} k={k}");
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|&s| s.count_ones() as usize == k && s <= full_mask(m)));
            }
        }
    }

    #[test]
    fn permute_and_lowest() {
        let perm = [2u8, 0, 1];
        assert_eq!(permute_mask(0b001, &perm), 0b100);
        assert_eq!(permute_mask(0b110, &perm), 0b011);
        assert_eq!(lowest_bits(0b1011_0100, 2), 0b0001_0100);
        assert_eq!(bit_indices(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }
}
