//! Seeded random changes of basis.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schurdefect_core::{FieldSpec, LieAlgebra, Matrix};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A permutation matrix times `2n` random transvections with multipliers in
/// `{±1, ±2}`; always invertible, with integer inverse.
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
        for col in 0..n {
            let v = m.get(i, col) + &(&c * m.get(j, col));
            m.set(i, col, v);
        }
    }
    m
}

pub fn random_base_change(l: &LieAlgebra, rng: &mut impl Rng) -> LieAlgebra {
    let p = random_invertible(l.field(), l.dim(), rng);
    l.change_basis(&p).expect("square invertible matrix of the right size")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_are_invertible_over_small_fields() {
        let mut rng = seeded(9);
        for p in [2, 3, 5] {
            let f = FieldSpec::prime(p).unwrap();
            for n in 1..6 {
                assert_eq!(random_invertible(f, n, &mut rng).rank(), n);
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let f = FieldSpec::rational();
        assert_eq!(random_invertible(f, 5, &mut seeded(4)), random_invertible(f, 5, &mut seeded(4)));
    }
}
