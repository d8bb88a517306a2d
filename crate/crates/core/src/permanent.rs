//! Matrix permanents over Q(i, √2).

use crate::field::Amplitude;

/// Permanent of a square matrix by Ryser's inclusion–exclusion formula,
/// visiting column subsets in Gray-code order so each step updates the row
/// sums by a single column.
///
/// `perm(A) = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j ∈ S} a_ij`
pub fn ryser(matrix: &[Vec<Amplitude>]) -> Amplitude {
    let n = matrix.len();
    if n == 0 {
        return Amplitude::one();
    }
    assert!(matrix.iter().all(|r| r.len() == n), "permanent needs a square matrix");
    assert!(n < 32, "permanent of a {n}×{n} matrix is out of reach");

    let mut row_sums = vec![Amplitude::zero(); n];
    let mut total = Amplitude::zero();
    let mut gray: u32 = 0;
    for step in 1u32..(1 << n) {
        let next = step ^ (step >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        let adding = next & (1 << flipped) != 0;
        gray = next;
        for (sum, row) in row_sums.iter_mut().zip(matrix) {
            if adding {
                *sum += &row[flipped];
            } else {
                *sum = &*sum - &row[flipped];
            }
        }
        let product = row_sums.iter().fold(Amplitude::one(), |acc, s| &acc * s);
        if gray.count_ones() % 2 == (n as u32) % 2 {
            total += &product;
        } else {
            total = &total - &product;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;
    use proptest::prelude::*;

    // Reference: sum over all permutations.
    fn naive(matrix: &[Vec<Amplitude>]) -> Amplitude {
        fn rec(matrix: &[Vec<Amplitude>], row: usize, used: &mut Vec<bool>) -> Amplitude {
            if row == matrix.len() {
                return Amplitude::one();
            }
            let mut acc = Amplitude::zero();
            for col in 0..matrix.len() {
                if !used[col] {
                    used[col] = true;
                    acc += &(&matrix[row][col] * &rec(matrix, row + 1, used));
                    used[col] = false;
                }
            }
            acc
        }
        rec(matrix, 0, &mut vec![false; matrix.len()])
    }

    fn int(n: i64) -> Amplitude {
        Amplitude::from_rational(rational(n, 1))
    }

    #[test]
    fn small_cases() {
        assert_eq!(ryser(&[]), Amplitude::one());
        assert_eq!(ryser(&[vec![int(7)]]), int(7));
        // perm [[1,2],[3,4]] = 1·4 + 2·3
        assert_eq!(ryser(&[vec![int(1), int(2)], vec![int(3), int(4)]]), int(10));
        // all-ones 4×4: 4! = 24
        let ones = vec![vec![int(1); 4]; 4];
        assert_eq!(ryser(&ones), int(24));
    }

    proptest! {
        #[test]
        fn agrees_with_permutation_sum(
            n in 1usize..=5,
            seed in proptest::collection::vec((-3i64..=3, -3i64..=3, -2i64..=2, -2i64..=2), 25),
        ) {
            let matrix: Vec<Vec<Amplitude>> = (0..n)
                .map(|i| (0..n).map(|j| {
                    let (a, b, c, d) = seed[i * 5 + j];
                    Amplitude::from_parts(rational(a, 1), rational(b, 2), rational(c, 1), rational(d, 3))
                }).collect())
                .collect();
            prop_assert_eq!(ryser(&matrix), naive(&matrix));
        }
    }
}
