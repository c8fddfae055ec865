use std::collections::HashMap;

use crate::linalg::ComplexScalar;

use super::tensor::next_index;
use super::{Leg, LegRef, Network, NetworkError, Tensor};

/// Reference contraction: one index variable per line (edge or free leg),
/// and for every joint assignment of all variables the product of the
/// indexed node entries is added to the output entry selected by the free
/// variables. Exponential in the number of lines; meant as an oracle.
pub fn contract_exhaustive(net: &Network) -> Result<Tensor, NetworkError> {
    net.validate()?;
    let mut var_of: HashMap<&LegRef, usize> = HashMap::new();
    let mut var_dims: Vec<usize> = Vec::new();
    for e in net.edges() {
        let v = var_dims.len();
        var_dims.push(net.leg_dim(&e.a)?);
        var_of.insert(&e.a, v);
        var_of.insert(&e.b, v);
    }
    let first_free = var_dims.len();
    for f in net.free_legs() {
        var_of.insert(f, var_dims.len());
        var_dims.push(net.leg_dim(f)?);
    }

    let factors: Vec<(&Tensor, Vec<usize>)> = net
        .nodes()
        .iter()
        .map(|(id, t)| {
            let vars = t
                .legs()
                .iter()
                .map(|l| var_of[&LegRef::new(id.clone(), l.name.clone())])
                .collect();
            (t, vars)
        })
        .collect();

    let out_dims = &var_dims[first_free..];
    let mut out = vec![ComplexScalar::new(0.0, 0.0); out_dims.iter().product()];
    let mut assignment = vec![0; var_dims.len()];
    let mut node_index = Vec::new();
    loop {
        let mut term = ComplexScalar::new(1.0, 0.0);
        for (t, vars) in &factors {
            node_index.clear();
            node_index.extend(vars.iter().map(|&v| assignment[v]));
            term *= t.get(&node_index);
        }
        let slot = assignment[first_free..]
            .iter()
            .zip(out_dims)
            .fold(0, |acc, (&i, &d)| acc * d + i);
        out[slot] += term;
        if !next_index(&mut assignment, &var_dims) {
            break;
        }
    }

    let legs = net
        .free_legs()
        .iter()
        .zip(out_dims)
        .map(|(f, &d)| Leg::new(f.to_string(), d))
        .collect();
    Ok(Tensor::from_parts(legs, out))
}
