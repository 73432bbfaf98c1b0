//! Small counting and subset helpers shared by the enumerators.

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All size-`k` multisets of `0..n` as non-decreasing sequences, in
/// lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 && k > 0 {
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] + 1 < n) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[i];
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        let Some(num) = acc.checked_mul(n - i) else {
            return u128::MAX;
        };
        acc = num / (i + 1);
    }
    acc
}

/// Gaussian binomial `[n choose k]_q`: the number of `k`-dimensional
/// subspaces of `F_q^n`. Saturates at `u128::MAX`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let pow = |e: u32| -> Option<u128> { q.checked_pow(e) };
    let mut acc: u128 = 1;
    for i in 0..k {
        let (Some(a), Some(b)) = (pow(n - i), pow(i + 1)) else {
            return u128::MAX;
        };
        let Some(num) = acc.checked_mul(a - 1) else {
            return u128::MAX;
        };
        acc = num / (b - 1);
    }
    acc
}

/// Position of `x` in a sorted slice, if present.
pub fn index_of(sorted: &[Vec<usize>], x: &[usize]) -> Option<usize> {
    sorted.binary_search_by(|s| s.as_slice().cmp(x)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_pascal(n: u32, k: u32, q: u128) -> u128 {
        if k == 0 || k == n {
            return 1;
        }
        if k > n {
            return 0;
        }
        q_pascal(n - 1, k - 1, q) + q.pow(k) * q_pascal(n - 1, k, q)
    }

    #[test]
    fn gaussian_binomial_matches_q_pascal() {
        for q in [2u64, 3, 5, 7] {
            for n in 0..8 {
                for k in 0..=n {
                    assert_eq!(gaussian_binomial(n, k, q), q_pascal(n, k, q as u128));
                }
            }
        }
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(200, 100, 1_000_003), u128::MAX);
    }

    #[test]
    fn subsets_and_multisets() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(4, 2)[1], vec![0, 2]);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(k_subsets(2, 3).is_empty());
        let ms = multisets(35, 3);
        assert_eq!(ms.len() as u128, binomial(37, 3));
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(index_of(&k_subsets(5, 2), &[1, 3]), Some(5));
    }
}
