//! Permutations of `{0, .., n-1}` stored as image arrays, ranked
//! lexicographically (Lehmer code).

/// All permutations of `0..n` in lexicographic order of their image arrays.
pub(crate) fn all_perms(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        // next_permutation
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Lexicographic rank of a permutation.
pub(crate) fn rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut r = 0usize;
    let mut used: u32 = 0;
    for (i, &x) in p.iter().enumerate() {
        let smaller_unused = (0..x).filter(|&y| used & (1 << y) == 0).count();
        r = r * (n - i) + smaller_unused;
        used |= 1 << x;
    }
    r
}

/// `(a ∘ b)(i) = a(b(i))`.
pub(crate) fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub(crate) fn inverse(a: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// Cycles of `p`, each listed in the direction of `p` starting from its
/// minimal point; cycles sorted by that minimal point. Fixed points are
/// 1-cycles.
pub(crate) fn cycles(p: &[u8]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = p[i] as usize;
        }
        out.push(cyc);
    }
    out
}
