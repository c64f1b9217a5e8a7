use std::collections::BTreeSet;

use super::{is_prime, GroupLattice, LatticeError, RawElement, Relation, MAX_ELEMENTS};

const SYMBOLS: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

fn symbol(i: usize) -> String {
    SYMBOLS
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("p{i}"))
}

fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if is_prime(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Label of `p1^e1 * ... * pk^ek`, with symbolic primes and `1` for the trivial group.
pub(crate) fn monomial_label(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| match e {
            1 => symbol(i),
            _ => format!("{}^{e}", symbol(i)),
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Subgroup lattice of the cyclic group of order `p1^e1 * ... * pk^ek`,
/// i.e. the product of chains `[e1] x ... x [ek]`.
///
/// Labels use the symbols `p, q, r, ...` by coordinate position (`"p^2*q"`),
/// whatever the numeric primes are. Without `primes`, the first `k` primes
/// are used for the order factorizations.
pub fn build_chain_product(exponents: &[u32], primes: Option<&[u64]>) -> Result<GroupLattice, LatticeError> {
    if exponents.is_empty() {
        return Err(LatticeError::NoExponents);
    }
    let primes = match primes {
        Some(ps) => {
            if ps.len() != exponents.len() {
                return Err(LatticeError::PrimeCountMismatch {
                    expected: exponents.len(),
                    got: ps.len(),
                });
            }
            let mut seen = BTreeSet::new();
            for &p in ps {
                if !is_prime(p) {
                    return Err(LatticeError::NotPrime(p));
                }
                if !seen.insert(p) {
                    return Err(LatticeError::DuplicatePrime(p));
                }
            }
            ps.to_vec()
        }
        None => first_primes(exponents.len()),
    };

    let mut count: usize = 1;
    for &e in exponents {
        count = count
            .checked_mul(e as usize + 1)
            .filter(|&c| c <= MAX_ELEMENTS)
            .ok_or(LatticeError::TooManyElements(usize::MAX))?;
    }

    // mixed-radix enumeration of exponent vectors
    let k = exponents.len();
    let mut tuples = Vec::with_capacity(count);
    let mut cur = vec![0u32; k];
    loop {
        tuples.push(cur.clone());
        let mut i = 0;
        while i < k && cur[i] == exponents[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        cur[i] += 1;
    }
    let position = |t: &[u32]| -> usize {
        let mut idx = 0;
        for i in (0..k).rev() {
            idx = idx * (exponents[i] as usize + 1) + t[i] as usize;
        }
        idx
    };

    let raw = tuples
        .iter()
        .map(|t| RawElement {
            label: monomial_label(t),
            order_factorization: t
                .iter()
                .zip(&primes)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, &p)| (p, e))
                .collect(),
        })
        .collect();
    let mut covers = Vec::new();
    for (a, t) in tuples.iter().enumerate() {
        for i in 0..k {
            if t[i] < exponents[i] {
                let mut u = t.clone();
                u[i] += 1;
                covers.push((a, position(&u)));
            }
        }
    }
    let name = format!("C[{}]", monomial_label(exponents));
    GroupLattice::from_parts(name, raw, Relation::Covers(covers), vec![])
}

/// `[n choose k]_p`, or `None` on overflow.
pub fn gaussian_binomial_u128(n: u32, k: u32, p: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(p.checked_pow(n - i)?.checked_sub(1)?)?;
        den = den.checked_mul(p.checked_pow(i + 1)?.checked_sub(1)?)?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    Some(num / den)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Row-reduced echelon basis of a subspace of `F_p^n`.
type Rref = Vec<Vec<u64>>;

fn reduce(v: &mut [u64], basis: &Rref, p: u64) {
    for row in basis {
        let piv = row.iter().position(|&x| x != 0).expect("nonzero row");
        let c = v[piv];
        if c != 0 {
            for (x, &r) in v.iter_mut().zip(row) {
                *x = (*x + (p - c) * r) % p;
            }
        }
    }
}

fn contains(basis: &Rref, v: &[u64], p: u64) -> bool {
    let mut w = v.to_vec();
    reduce(&mut w, basis, p);
    w.iter().all(|&x| x == 0)
}

/// Lattice of all subspaces of `F_p^n`, ordered by inclusion; rank is dimension.
pub fn build_subspace_lattice(p: u64, n: u32) -> Result<GroupLattice, LatticeError> {
    if !is_prime(p) {
        return Err(LatticeError::NotPrime(p));
    }
    let guard = |count: u128| LatticeError::SubspaceGuard { p, n, count };
    match p.checked_pow(n) {
        Some(q) if q <= 1 << 16 => {}
        _ => return Err(guard(u128::MAX)),
    }
    let mut total: u128 = 0;
    for k in 0..=n {
        total = total
            .checked_add(gaussian_binomial_u128(n, k, p).ok_or(guard(u128::MAX))?)
            .ok_or(guard(u128::MAX))?;
    }
    if total > MAX_ELEMENTS as u128 {
        return Err(guard(total));
    }

    let n = n as usize;
    let mut spaces: Vec<Rref> = Vec::with_capacity(total as usize);
    for k in 0..=n {
        // pivot column sets in lexicographic order
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free slots: (row, col) with col > pivot[row] and col not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = &pivots;
                    ((pv[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut vals = vec![0u64; free.len()];
            loop {
                let mut m = vec![vec![0u64; n]; k];
                for r in 0..k {
                    m[r][pivots[r]] = 1;
                }
                for (&(r, c), &v) in free.iter().zip(&vals) {
                    m[r][c] = v;
                }
                spaces.push(m);
                let mut i = 0;
                while i < vals.len() && vals[i] == p - 1 {
                    vals[i] = 0;
                    i += 1;
                }
                if i == vals.len() {
                    break;
                }
                vals[i] += 1;
            }
            // next k-combination
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if pivots[i] < n - k + i {
                    pivots[i] += 1;
                    for j in i + 1..k {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    debug_assert_eq!(spaces.len() as u128, total);

    let digit_sep = if p < 10 { "" } else { "." };
    let raw = spaces
        .iter()
        .map(|b| RawElement {
            label: if b.is_empty() {
                "0".to_string()
            } else {
                let rows: Vec<String> = b
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(digit_sep))
                    .collect();
                format!("span({})", rows.join(","))
            },
            order_factorization: if b.is_empty() { vec![] } else { vec![(p, b.len() as u32)] },
        })
        .collect();

    let mut covers = Vec::new();
    for (w, bw) in spaces.iter().enumerate() {
        for (u, bu) in spaces.iter().enumerate() {
            if bu.len() + 1 == bw.len() && bu.iter().all(|row| contains(bw, row, p)) {
                covers.push((u, w));
            }
        }
    }
    GroupLattice::from_parts(format!("Sub(F_{p}^{n})"), raw, Relation::Covers(covers), vec![])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_product_shapes() {
        let l = build_chain_product(&[1, 1], None).unwrap();
        assert_eq!((l.len(), l.arrow_count()), (4, 5));
        let l = build_chain_product(&[2, 1], None).unwrap();
        assert_eq!(l.len(), 6);
        let labels: Vec<_> = l.elements().iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["1", "p", "q", "p*q", "p^2", "p^2*q"]);
        assert_eq!(l.element(l.top()).order(), 12);
        let l = build_chain_product(&[0], None).unwrap();
        assert_eq!((l.len(), l.arrow_count()), (1, 0));
        let l = build_chain_product(&[2], None).unwrap();
        let names: Vec<_> = l
            .nontrivial_intervals()
            .iter()
            .map(|a| (l.element(a.source).label.clone(), l.element(a.target).label.clone()))
            .collect();
        assert_eq!(
            names,
            [("1".into(), "p".into()), ("1".into(), "p^2".into()), ("p".into(), "p^2".into())]
        );
    }

    #[test]
    fn chain_product_errors() {
        assert_eq!(build_chain_product(&[], None).unwrap_err(), LatticeError::NoExponents);
        assert_eq!(
            build_chain_product(&[1, 1], Some(&[3, 3])).unwrap_err(),
            LatticeError::DuplicatePrime(3)
        );
        assert!(matches!(
            build_chain_product(&[1], Some(&[2, 3])),
            Err(LatticeError::PrimeCountMismatch { .. })
        ));
        assert_eq!(build_chain_product(&[1], Some(&[4])).unwrap_err(), LatticeError::NotPrime(4));
        let l = build_chain_product(&[1, 1], Some(&[7, 5])).unwrap();
        assert_eq!(l.element(l.top()).order(), 35);
    }

    fn brute_force_subspaces(p: u64, n: u32) -> Vec<usize> {
        // every subspace is the span of some set of vectors; count distinct
        // member sets by dimension
        let q = p.pow(n) as usize;
        let to_vec = |mut x: usize| {
            (0..n)
                .map(|_| {
                    let d = (x as u64) % p;
                    x /= p as usize;
                    d
                })
                .collect::<Vec<u64>>()
        };
        let vecs: Vec<Vec<u64>> = (0..q).map(to_vec).collect();
        let mut found = BTreeSet::new();
        let mut frontier = vec![BTreeSet::from([0usize])];
        found.insert(vec![0usize]);
        while let Some(s) = frontier.pop() {
            for v in 0..q {
                if s.contains(&v) {
                    continue;
                }
                let mut span = s.clone();
                loop {
                    let mut grown = span.clone();
                    for &a in &span {
                        for c in 0..p {
                            let w: Vec<u64> = vecs[a].iter().zip(&vecs[v]).map(|(x, y)| (x + c * y) % p).collect();
                            let idx = w.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize);
                            grown.insert(idx);
                        }
                    }
                    if grown == span {
                        break;
                    }
                    span = grown;
                }
                let key: Vec<usize> = span.iter().copied().collect();
                if found.insert(key) {
                    frontier.push(span);
                }
            }
        }
        let mut by_dim = vec![0usize; n as usize + 1];
        for s in found {
            let mut d = 0;
            while (p as usize).pow(d) < s.len() {
                d += 1;
            }
            by_dim[d as usize] += 1;
        }
        by_dim
    }

    #[test]
    fn subspace_counts_match_brute_force_and_gaussian_binomials() {
        for (p, n) in [(2, 0), (2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 3)] {
            let l = build_subspace_lattice(p, n).unwrap();
            let mut by_rank = vec![0usize; n as usize + 1];
            for e in l.elements() {
                by_rank[e.rank as usize] += 1;
            }
            assert_eq!(by_rank, brute_force_subspaces(p, n), "p={p} n={n}");
            for k in 0..=n {
                assert_eq!(by_rank[k as usize] as u128, gaussian_binomial_u128(n, k, p).unwrap());
            }
        }
        let l = build_subspace_lattice(2, 2).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(build_subspace_lattice(2, 0).unwrap().len(), 1);
    }

    #[test]
    fn subspace_guard() {
        assert!(matches!(build_subspace_lattice(2, 17), Err(LatticeError::SubspaceGuard { .. })));
        // 2^8 vectors is fine but the subspace count is far beyond the element cap
        assert!(matches!(build_subspace_lattice(2, 8), Err(LatticeError::SubspaceGuard { .. })));
        assert_eq!(build_subspace_lattice(6, 2).unwrap_err(), LatticeError::NotPrime(6));
    }
}
