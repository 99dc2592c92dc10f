use brunnian::construction::{build_instance, condition_check, ConstructionInstance};
use brunnian::{Matrix, Polynomial, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 9] = [5, 7, 11, 13, 17, 19, 23, 29, 31];

type Dense = Vec<Vec<u64>>;

fn dense_mul(a: &Dense, b: &Dense, p: u64) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j] % p).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

fn dense_companion(low: &[u64], p: u64) -> Dense {
    let n = low.len();
    let mut m = vec![vec![0; n]; n];
    for i in 1..n {
        m[i][i - 1] = 1;
    }
    for i in 0..n {
        m[i][n - 1] = (p - low[i]) % p;
    }
    m
}

/// `C G_n ... G_1` straight from the definitions, with `G^-1 = G^(n-1)`.
fn oracle_k(low: &[u64], p: u64) -> Dense {
    let n = low.len();
    let c = dense_companion(low, p);
    let mut shift_low = vec![0; n];
    shift_low[0] = p - 1;
    let g = dense_companion(&shift_low, p);
    let mut g_inv = g.clone();
    for _ in 0..n - 2 {
        g_inv = dense_mul(&g_inv, &g, p);
    }
    let mut gk = c.clone();
    let mut product = c.clone();
    for _ in 1..n {
        gk = dense_mul(&dense_mul(&g, &gk, p), &g_inv, p);
        product = dense_mul(&gk, &product, p);
    }
    dense_mul(&c, &product, p)
}

fn random_primitive(rng: &mut ChaCha8Rng, field: PrimeField, n: usize) -> Polynomial {
    loop {
        let mut coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..field.modulus())).collect();
        coeffs.push(1);
        let f = Polynomial::new(field, coeffs);
        if f.is_primitive().unwrap() {
            return f;
        }
    }
}

fn sample_grid(count_per_cell: usize) -> Vec<ConstructionInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for p in PRIMES {
        let field = PrimeField::new(p).unwrap();
        for n in 3..=8 {
            for _ in 0..count_per_cell {
                out.push(build_instance(&random_primitive(&mut rng, field, n)).unwrap());
            }
        }
    }
    out
}

#[test]
fn products_agree_with_naive_oracle() {
    let grid = sample_grid(4);
    assert!(grid.len() >= 200);
    for inst in &grid {
        let p = inst.field().modulus();
        let k = inst.k_product();
        assert_eq!(k.rows(), oracle_k(&inst.f().coeffs()[..inst.n()], p), "{}", inst.f());
        assert_eq!(k, inst.k_closed_form());
        assert_eq!(inst.plain_product(), inst.g_inv_c().pow(inst.n() as u64));
    }
}

#[test]
fn structural_identities_on_grid() {
    for inst in sample_grid(4) {
        let f = inst.f();
        let n = inst.n();
        let field = inst.field();
        let p = field.modulus();

        assert_eq!(inst.g_inv_c(), inst.expected_g_inv_c(), "{f}");
        let cond = condition_check(field, n, f).unwrap();
        if cond.cond_a0 {
            let (q, d) = inst.eigen_qd().unwrap();
            assert_eq!(&(&q.inverse().unwrap() * &inst.g_inv_c()) * &q, d);
            let shifted = inst.g_inv_c().sub(&Matrix::identity(field, n)).unwrap();
            assert_eq!(shifted.rank(), 1, "{f}");
        }

        let k = inst.k_product();
        let g = k.as_companion_poly().expect("K is companion-shaped");
        assert_eq!(g, inst.expected_k_poly(), "{f}");
        assert!(inst.k_shifts_basis(&k));
        assert!(!g.coeff(0).is_zero());
        assert_eq!(k != *inst.c(), cond.cond_a0n, "{f}");

        let middle_zero = (1..n).all(|i| f.coeff(i).is_zero());
        assert_eq!(
            inst.last_column_is_scaled_c(&k),
            !cond.cond_a0n || middle_zero,
            "{f}"
        );

        if !(n as u64).is_multiple_of(p - 1) {
            assert!(cond.cond_a0 && cond.cond_a0n, "{f}");
        }
    }
}

#[test]
fn constant_term_generates_unit_group() {
    // (-1)^n a_0 has multiplicative order p - 1, found by walking powers
    for inst in sample_grid(2) {
        let p = inst.field().modulus();
        let n = inst.n();
        let a0 = inst.f().coeffs()[0];
        let x = if n % 2 == 0 { a0 } else { (p - a0) % p };
        let mut y = x;
        let mut order = 1;
        while y != 1 {
            y = y * x % p;
            order += 1;
        }
        assert_eq!(order, p - 1, "{}", inst.f());
    }
}

#[test]
fn collapse_for_multiples_of_p_minus_one() {
    let field = PrimeField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [4, 8] {
        for _ in 0..5 {
            let inst = build_instance(&random_primitive(&mut rng, field, n)).unwrap();
            assert_eq!(inst.k_product(), *inst.c(), "{}", inst.f());
        }
    }
}
