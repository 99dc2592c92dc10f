use brunnian::poly::monic_polys;
use brunnian::PrimeField;

/// Order of `X` modulo the monic `low + X^n`, walking powers until they
/// return to 1. `None` when `X` is not a unit.
fn walk_order(low: &[u64], p: u64) -> Option<u64> {
    let n = low.len();
    if low[0] == 0 {
        return None;
    }
    let mut r = vec![0u64; n];
    if n == 1 {
        r[0] = (p - low[0]) % p;
    } else {
        r[1] = 1;
    }
    let mut e = 1;
    loop {
        if r[0] == 1 && r[1..].iter().all(|&c| c == 0) {
            return Some(e);
        }
        let top = r[n - 1];
        for i in (1..n).rev() {
            r[i] = (r[i - 1] + (p - low[i]) * top) % p;
        }
        r[0] = (p - low[0]) * top % p;
        e += 1;
    }
}

#[test]
fn primitivity_matches_power_walk() {
    let mut checked = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        let field = PrimeField::new(p).unwrap();
        let mut n = 1;
        while p.pow(n as u32) <= 2_000 {
            let full = p.pow(n as u32) - 1;
            for f in monic_polys(field, n) {
                let expected = walk_order(&f.coeffs()[..n], p) == Some(full);
                assert_eq!(f.is_primitive().unwrap(), expected, "{f} over F_{p}");
                checked += 1;
            }
            n += 1;
        }
    }
    assert!(checked > 5_000);
}
