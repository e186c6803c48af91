//! Deterministic pairwise summation.
//!
//! Parallel stages collect their partial values in a fixed order and reduce
//! them with a balanced binary tree, so the rounding pattern depends only on
//! the number of terms and never on scheduling.

use std::ops::Add;

pub(crate) fn tree_sum<T>(values: &[T], zero: T) -> T
where
    T: Copy + Add<Output = T>,
{
    match values.len() {
        0 => zero,
        1 => values[0],
        n => {
            let (l, r) = values.split_at(n / 2);
            tree_sum(l, zero) + tree_sum(r, zero)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_in_fixed_order() {
        assert_eq!(tree_sum(&[] as &[f64], 0.0), 0.0);
        assert_eq!(tree_sum(&[1.0, 2.0, 3.0], 0.0), 6.0);
        let v: Vec<f64> = (0..1000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        assert_eq!(tree_sum(&v, 0.0).to_bits(), tree_sum(&v, 0.0).to_bits());
    }
}
