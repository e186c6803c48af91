//! Closed tensor network contraction.
//!
//! Each node is an operator whose rows are indexed by its output legs and
//! whose columns are indexed by its input legs (mixed radix, first leg most
//! significant). A leg label must occur exactly twice across the network;
//! the two occurrences are summed over. Contraction is greedy and pairwise:
//! at each step the connected pair with the smallest result is merged.

use std::collections::HashMap;

use num_complex::Complex64;

use super::matrix::{gemm, ComplexMatrix, ONE, ZERO};
use crate::error::{Error, Result};

pub type LegLabel = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Leg {
    pub label: LegLabel,
    pub dim: usize,
}

impl Leg {
    pub fn new(label: LegLabel, dim: usize) -> Self {
        Self { label, dim }
    }
}

#[derive(Clone, Debug)]
pub struct NetworkNode {
    pub matrix: ComplexMatrix,
    pub inputs: Vec<Leg>,
    pub outputs: Vec<Leg>,
}

impl NetworkNode {
    pub fn new(matrix: ComplexMatrix, inputs: Vec<Leg>, outputs: Vec<Leg>) -> Self {
        Self {
            matrix,
            inputs,
            outputs,
        }
    }
}

/// Dense tensor with labelled legs, row-major over `legs`.
#[derive(Clone, Debug)]
struct Tensor {
    legs: Vec<Leg>,
    data: Vec<Complex64>,
}

impl Tensor {
    fn size(&self) -> usize {
        self.data.len()
    }

    fn has(&self, label: LegLabel) -> bool {
        self.legs.iter().any(|l| l.label == label)
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.legs.len()];
        for i in (0..self.legs.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.legs[i + 1].dim;
        }
        s
    }

    /// Reorders the legs so that `order[i]` becomes leg `i`.
    fn permuted(&self, order: &[usize]) -> Tensor {
        if order.iter().enumerate().all(|(i, &o)| i == o) {
            return self.clone();
        }
        let old_strides = self.strides();
        let legs: Vec<Leg> = order.iter().map(|&o| self.legs[o]).collect();
        let src_strides: Vec<usize> = order.iter().map(|&o| old_strides[o]).collect();
        let dims: Vec<usize> = legs.iter().map(|l| l.dim).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0usize; dims.len()];
        let mut offset = 0usize;
        for _ in 0..self.data.len() {
            data.push(self.data[offset]);
            for ax in (0..dims.len()).rev() {
                idx[ax] += 1;
                offset += src_strides[ax];
                if idx[ax] < dims[ax] {
                    break;
                }
                offset -= src_strides[ax] * dims[ax];
                idx[ax] = 0;
            }
        }
        Tensor { legs, data }
    }

    /// Sums over every label that appears twice on this tensor.
    fn self_traced(self) -> Tensor {
        let mut t = self;
        loop {
            let pair = (0..t.legs.len()).find_map(|i| {
                (i + 1..t.legs.len())
                    .find(|&j| t.legs[j].label == t.legs[i].label)
                    .map(|j| (i, j))
            });
            let Some((p, q)) = pair else { return t };
            let rest: Vec<usize> = (0..t.legs.len()).filter(|&k| k != p && k != q).collect();
            let mut order = rest.clone();
            order.push(p);
            order.push(q);
            let perm = t.permuted(&order);
            let d = t.legs[p].dim;
            let outer: usize = rest.iter().map(|&k| t.legs[k].dim).product();
            let data = (0..outer)
                .map(|o| (0..d).map(|i| perm.data[o * d * d + i * d + i]).sum())
                .collect();
            t = Tensor {
                legs: rest.iter().map(|&k| t.legs[k]).collect(),
                data,
            };
        }
    }

    fn contract(&self, other: &Tensor) -> Tensor {
        let shared: Vec<LegLabel> = self
            .legs
            .iter()
            .map(|l| l.label)
            .filter(|&l| other.has(l))
            .collect();
        let a_free: Vec<usize> = (0..self.legs.len())
            .filter(|&i| !shared.contains(&self.legs[i].label))
            .collect();
        let b_free: Vec<usize> = (0..other.legs.len())
            .filter(|&i| !shared.contains(&other.legs[i].label))
            .collect();
        let pos = |t: &Tensor, l: LegLabel| t.legs.iter().position(|x| x.label == l).unwrap();

        let mut a_order = a_free.clone();
        a_order.extend(shared.iter().map(|&l| pos(self, l)));
        let mut b_order: Vec<usize> = shared.iter().map(|&l| pos(other, l)).collect();
        b_order.extend(&b_free);

        let a = self.permuted(&a_order);
        let b = other.permuted(&b_order);
        let m: usize = a_free.iter().map(|&i| self.legs[i].dim).product();
        let n: usize = b_free.iter().map(|&i| other.legs[i].dim).product();
        let k = a.size() / m.max(1);
        let mut data = vec![ZERO; m * n];
        gemm(m, k, n, &a.data, &b.data, &mut data);

        let mut legs: Vec<Leg> = a_free.iter().map(|&i| self.legs[i]).collect();
        legs.extend(b_free.iter().map(|&i| other.legs[i]));
        Tensor { legs, data }
    }
}

fn validate(nodes: &[NetworkNode]) -> Result<()> {
    let mut seen: HashMap<LegLabel, (usize, usize)> = HashMap::new();
    for (n, node) in nodes.iter().enumerate() {
        let out_dim: usize = node.outputs.iter().map(|l| l.dim).product();
        let in_dim: usize = node.inputs.iter().map(|l| l.dim).product();
        if out_dim != node.matrix.rows() || in_dim != node.matrix.cols() {
            return Err(Error::Network(format!(
                "node {n}: legs describe a {out_dim}x{in_dim} operator but matrix is {}x{}",
                node.matrix.rows(),
                node.matrix.cols()
            )));
        }
        for leg in node.outputs.iter().chain(&node.inputs) {
            let entry = seen.entry(leg.label).or_insert((0, leg.dim));
            if entry.1 != leg.dim {
                return Err(Error::Network(format!(
                    "leg {} has dimensions {} and {}",
                    leg.label, entry.1, leg.dim
                )));
            }
            entry.0 += 1;
        }
    }
    let mut bad: Vec<_> = seen.iter().filter(|(_, (count, _))| *count != 2).collect();
    bad.sort();
    if let Some((label, (count, _))) = bad.first() {
        return Err(Error::Network(format!(
            "leg {label} appears {count} time(s); closed networks need exactly 2"
        )));
    }
    Ok(())
}

/// Fully contracts a closed network to a scalar.
pub fn contract_network(nodes: &[NetworkNode]) -> Result<Complex64> {
    validate(nodes)?;
    let mut tensors: Vec<Tensor> = nodes
        .iter()
        .map(|n| {
            let mut legs = n.outputs.clone();
            legs.extend(&n.inputs);
            Tensor {
                legs,
                data: n.matrix.as_slice().to_vec(),
            }
            .self_traced()
        })
        .collect();

    loop {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let shared: usize = tensors[i]
                    .legs
                    .iter()
                    .filter(|l| tensors[j].has(l.label))
                    .map(|l| l.dim)
                    .product();
                if !tensors[i].legs.iter().any(|l| tensors[j].has(l.label)) {
                    continue;
                }
                let result = tensors[i].size() / shared * tensors[j].size() / shared;
                let flops = tensors[i].size() / shared * tensors[j].size();
                if best.map_or(true, |(_, _, r, f)| (result, flops) < (r, f)) {
                    best = Some((i, j, result, flops));
                }
            }
        }
        let Some((i, j, _, _)) = best else { break };
        let b = tensors.remove(j);
        let a = tensors.remove(i);
        tensors.insert(i, a.contract(&b));
    }

    // Every remaining tensor is a closed component, hence a scalar.
    let mut value = ONE;
    for t in tensors {
        if !t.legs.is_empty() {
            return Err(Error::Consistency("open legs left after contraction".into()));
        }
        value *= t.data[0];
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: [f64; 4], b: [f64; 4]) -> ComplexMatrix {
        ComplexMatrix::from_vec(
            2,
            2,
            a.iter().zip(b).map(|(&r, i)| Complex64::new(r, i)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_loop_is_trace() {
        let a = m2([1., 2., 3., 4.], [0.5, 0., 0., -1.]);
        let net = [NetworkNode::new(a.clone(), vec![Leg::new(0, 2)], vec![Leg::new(0, 2)])];
        assert!((contract_network(&net).unwrap() - a.trace()).norm() < 1e-14);
    }

    #[test]
    fn two_node_loop_is_trace_of_product() {
        let a = m2([1., 2., 3., 4.], [0., 1., 0., 0.]);
        let b = m2([0., 1., -1., 2.], [1., 0., 0., 1.]);
        let net = [
            NetworkNode::new(a.clone(), vec![Leg::new(0, 2)], vec![Leg::new(1, 2)]),
            NetworkNode::new(b.clone(), vec![Leg::new(1, 2)], vec![Leg::new(0, 2)]),
        ];
        let expect = a.matmul(&b).trace();
        assert!((contract_network(&net).unwrap() - expect).norm() < 1e-13);
    }

    #[test]
    fn unmatched_label_rejected() {
        let a = ComplexMatrix::identity(2);
        let net = [NetworkNode::new(a, vec![Leg::new(0, 2)], vec![Leg::new(1, 2)])];
        assert!(matches!(contract_network(&net), Err(Error::Network(_))));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let net = [
            NetworkNode::new(ComplexMatrix::identity(2), vec![Leg::new(0, 2)], vec![Leg::new(1, 2)]),
            NetworkNode::new(ComplexMatrix::identity(3), vec![Leg::new(1, 3)], vec![Leg::new(0, 3)]),
        ];
        assert!(matches!(contract_network(&net), Err(Error::Network(_))));
        let wrong_shape = [NetworkNode::new(ComplexMatrix::identity(2), vec![Leg::new(0, 3)], vec![Leg::new(0, 3)])];
        assert!(contract_network(&wrong_shape).is_err());
    }

    #[test]
    fn disconnected_components_multiply() {
        let a = m2([1., 2., 3., 4.], [0.; 4]);
        let b = m2([2., 0., 0., 3.], [0.; 4]);
        let net = [
            NetworkNode::new(a, vec![Leg::new(0, 2)], vec![Leg::new(0, 2)]),
            NetworkNode::new(b, vec![Leg::new(1, 2)], vec![Leg::new(1, 2)]),
        ];
        assert!((contract_network(&net).unwrap() - Complex64::new(25.0, 0.0)).norm() < 1e-14);
    }
}
