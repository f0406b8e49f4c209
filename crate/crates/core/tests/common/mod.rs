#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schurdefect_core::{FieldSpec, LieAlgebra, Matrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random unimodular matrix: a permutation times a product of transvections.
pub fn random_invertible(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::from_fn(field, n, n, |r, c| if perm[c] == r { field.one() } else { field.zero() });
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = field.from_int([-2, -1, 1, 2][rng.gen_range(0..4)]);
        // row_i += c · row_j
        for col in 0..n {
            let v = m.get(i, col) + &(&c * m.get(j, col));
            m.set(i, col, v);
        }
    }
    m
}

pub fn random_base_change(l: &LieAlgebra, rng: &mut impl Rng) -> LieAlgebra {
    let p = random_invertible(l.field(), l.dim(), rng);
    l.change_basis(&p).unwrap()
}

pub fn q() -> FieldSpec {
    FieldSpec::rational()
}

pub fn gf(p: u32) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}
