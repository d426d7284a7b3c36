//! Linear circuits: edge-labelled DAGs computing `x ↦ xA` with
//! `A[i][j] = Σ_paths ∏ labels` from input `i` to output `j`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::json::{scalar_from_json, scalar_to_json};
use crate::exact::{ExactMatrix, ExactScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: ExactScalar,
}

/// Nodes are `0..num_nodes`; inputs and outputs are ordered node lists.
#[derive(Clone, Debug)]
pub struct LinearCircuit {
    num_nodes: usize,
    edges: Vec<Edge>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    conductor: Option<u32>,
}

impl LinearCircuit {
    /// Validates node ranges, distinct and disjoint inputs/outputs, degree
    /// constraints, nonzero labels, a common conductor and acyclicity.
    pub fn new(
        num_nodes: usize,
        inputs: Vec<usize>,
        outputs: Vec<usize>,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCircuit(msg));
        let mut role = vec![0u8; num_nodes];
        for (&v, tag) in inputs.iter().map(|v| (v, 1u8)).chain(outputs.iter().map(|v| (v, 2u8))) {
            if v >= num_nodes {
                return bad(format!("node {v} out of range"));
            }
            if role[v] != 0 {
                return bad(format!("node {v} listed twice among inputs/outputs"));
            }
            role[v] = tag;
        }
        let mut conductor = None;
        for e in &edges {
            if e.from >= num_nodes || e.to >= num_nodes {
                return bad(format!("edge {}->{} out of range", e.from, e.to));
            }
            if e.label.is_zero() {
                return bad(format!("edge {}->{} has label 0", e.from, e.to));
            }
            if role[e.to] == 1 {
                return bad(format!("input node {} has an incoming edge", e.to));
            }
            if role[e.from] == 2 {
                return bad(format!("output node {} has an outgoing edge", e.from));
            }
            if let Some(m) = e.label.conductor() {
                match conductor {
                    None => conductor = Some(m),
                    Some(c) if c != m => return Err(Error::ConductorMismatch(c, m)),
                    _ => {}
                }
            }
        }
        let c = LinearCircuit {
            num_nodes,
            edges,
            inputs,
            outputs,
            conductor,
        };
        c.topological_order()?;
        Ok(c)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// The number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.num_nodes];
        let mut adj = vec![Vec::new(); self.num_nodes];
        for (k, e) in self.edges.iter().enumerate() {
            indeg[e.to] += 1;
            adj[e.from].push(k);
        }
        let mut queue: VecDeque<usize> = (0..self.num_nodes).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.num_nodes);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &k in &adj[v] {
                let w = self.edges[k].to;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() != self.num_nodes {
            return Err(Error::CycleDetected);
        }
        Ok(order)
    }

    fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.from].push(k);
        }
        adj
    }

    /// Length of a longest input-to-output path.
    pub fn depth(&self) -> usize {
        let order = self.topological_order().expect("validated at construction");
        let adj = self.out_edges();
        let mut dist: Vec<Option<usize>> = vec![None; self.num_nodes];
        for &v in &self.inputs {
            dist[v] = Some(0);
        }
        for v in order {
            let Some(d) = dist[v] else { continue };
            for &k in &adj[v] {
                let w = self.edges[k].to;
                dist[w] = Some(dist[w].map_or(d + 1, |x| x.max(d + 1)));
            }
        }
        self.outputs.iter().filter_map(|&o| dist[o]).max().unwrap_or(0)
    }

    fn zero(&self) -> ExactScalar {
        match self.conductor {
            Some(m) => ExactScalar::zero().coerce_to(m).expect("rational lifts"),
            None => ExactScalar::zero(),
        }
    }

    /// The `n_in × n_out` matrix of path-product sums, by forward accumulation
    /// in topological order.
    pub fn evaluate(&self) -> ExactMatrix {
        let order = self.topological_order().expect("validated at construction");
        let adj = self.out_edges();
        let n_in = self.inputs.len();
        let zero = self.zero();
        let mut acc: Vec<Option<Vec<ExactScalar>>> = vec![None; self.num_nodes];
        for (i, &v) in self.inputs.iter().enumerate() {
            let mut e = vec![zero.clone(); n_in];
            e[i] = ExactScalar::one();
            acc[v] = Some(e);
        }
        for v in order {
            let Some(val) = acc[v].take() else { continue };
            for &k in &adj[v] {
                let e = &self.edges[k];
                let target = acc[e.to].get_or_insert_with(|| vec![zero.clone(); n_in]);
                for (t, x) in target.iter_mut().zip(&val) {
                    if !x.is_zero() {
                        *t = &*t + &(x * &e.label);
                    }
                }
            }
            acc[v] = Some(val);
        }
        ExactMatrix::from_fn(n_in, self.outputs.len(), |i, j| match &acc[self.outputs[j]] {
            Some(v) => v[i].clone(),
            None => zero.clone(),
        })
    }

    /// Adjacency sum with inputs and outputs identified; parallel edges are
    /// merged and edges whose labels cancel are removed.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.inputs.len() != other.inputs.len() || self.outputs.len() != other.outputs.len() {
            return Err(Error::Dimension(format!(
                "sum of {}->{} and {}->{} circuits",
                self.inputs.len(),
                self.outputs.len(),
                other.inputs.len(),
                other.outputs.len()
            )));
        }
        let mut map: HashMap<usize, usize> = HashMap::new();
        for (a, b) in other.inputs.iter().zip(&self.inputs) {
            map.insert(*a, *b);
        }
        for (a, b) in other.outputs.iter().zip(&self.outputs) {
            map.insert(*a, *b);
        }
        let mut next = self.num_nodes;
        for v in 0..other.num_nodes {
            map.entry(v).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        let mut merged: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
        let renamed = other.edges.iter().map(|e| Edge {
            from: map[&e.from],
            to: map[&e.to],
            label: e.label.clone(),
        });
        for e in self.edges.iter().cloned().chain(renamed) {
            let slot = merged.entry((e.from, e.to)).or_insert_with(ExactScalar::zero);
            *slot = slot.try_add(&e.label)?;
        }
        let edges = merged
            .into_iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|((from, to), label)| Edge { from, to, label })
            .collect();
        LinearCircuit::new(next, self.inputs.clone(), self.outputs.clone(), edges)
    }

    /// Composition feeding the outputs of `self` into the inputs of `other`;
    /// evaluates to `evaluate(self) · evaluate(other)`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.outputs.len() != other.inputs.len() {
            return Err(Error::Dimension(format!(
                "stack of {} outputs onto {} inputs",
                self.outputs.len(),
                other.inputs.len()
            )));
        }
        let mut map: HashMap<usize, usize> = other
            .inputs
            .iter()
            .zip(&self.outputs)
            .map(|(a, b)| (*a, *b))
            .collect();
        let mut next = self.num_nodes;
        for v in 0..other.num_nodes {
            map.entry(v).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            from: map[&e.from],
            to: map[&e.to],
            label: e.label.clone(),
        }));
        let outputs = other.outputs.iter().map(|v| map[v]).collect();
        LinearCircuit::new(next, self.inputs.clone(), outputs, edges)
    }

    /// Same graph with every label negated.
    pub fn negate(&self) -> Self {
        let mut c = self.clone();
        for e in &mut c.edges {
            e.label = -&e.label;
        }
        c
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!({"from": e.from, "to": e.to, "label": scalar_to_json(&e.label)}))
            .collect();
        let mut v = json!({"inputs": self.inputs, "outputs": self.outputs, "edges": edges});
        if let Some(m) = self.conductor {
            v["conductor"] = json!(m);
        }
        v
    }

    /// Parses circuit JSON; cyclotomic labels need a top-level `conductor`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ids = |k: &str| -> Result<Vec<usize>> {
            v.get(k)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("missing {k:?}")))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::Parse(format!("bad node id {x}")))
                })
                .collect()
        };
        let inputs = ids("inputs")?;
        let outputs = ids("outputs")?;
        let conductor = v.get("conductor").and_then(Value::as_u64).map(|m| m as u32);
        let mut edges = Vec::new();
        for e in v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"edges\"".into()))?
        {
            let node = |k: &str| {
                e.get(k)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("edge without {k:?}")))
            };
            let label = scalar_from_json(
                e.get("label").ok_or_else(|| Error::Parse("edge without label".into()))?,
                conductor,
            )?;
            edges.push(Edge {
                from: node("from")?,
                to: node("to")?,
                label,
            });
        }
        let num_nodes = inputs
            .iter()
            .chain(&outputs)
            .copied()
            .chain(edges.iter().flat_map(|e| [e.from, e.to]))
            .max()
            .map_or(0, |m| m + 1);
        LinearCircuit::new(num_nodes, inputs, outputs, edges)
    }

    /// Graphviz source; inputs are boxes, outputs double circles.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph circuit {\n  rankdir=LR;\n");
        for (k, v) in self.inputs.iter().enumerate() {
            let _ = writeln!(s, "  n{v} [shape=box,label=\"in{}\"];", k + 1);
        }
        for (k, v) in self.outputs.iter().enumerate() {
            let _ = writeln!(s, "  n{v} [shape=doublecircle,label=\"out{}\"];", k + 1);
        }
        for e in &self.edges {
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.label);
        }
        s.push_str("}\n");
        s
    }
}

/// Depth-one circuit with one edge per nonzero entry of `m`.
pub fn naive_circuit(m: &ExactMatrix) -> LinearCircuit {
    let (r, c) = (m.nrows(), m.ncols());
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let x = m.get(i, j);
            if !x.is_zero() {
                edges.push(Edge {
                    from: i,
                    to: r + j,
                    label: x.clone(),
                });
            }
        }
    }
    LinearCircuit::new(r + c, (0..r).collect(), (r..r + c).collect(), edges)
        .expect("bipartite circuit is valid")
}

/// `n` parallel wires with label 1.
pub fn identity_wires(n: usize) -> LinearCircuit {
    naive_circuit(&ExactMatrix::identity(n))
}

/// Lexicographically first set of columns spanning the column space.
pub fn column_basis(a: &ExactMatrix) -> Vec<usize> {
    let mut basis = Vec::new();
    let rows: Vec<usize> = (0..a.nrows()).collect();
    for j in 0..a.ncols() {
        let mut trial = basis.clone();
        trial.push(j);
        if a.select(&rows, &trial).rank() == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// Depth-two circuit through `rank(a)` middle nodes evaluating to `a`.
pub fn factor_circuit(a: &ExactMatrix, r: usize) -> Result<LinearCircuit> {
    let rank = a.rank();
    if rank > r {
        return Err(Error::RankTooLarge { rank, bound: r });
    }
    let (n, m) = (a.nrows(), a.ncols());
    let basis = column_basis(a);
    let rows: Vec<usize> = (0..n).collect();
    let a1 = a.select(&rows, &basis);
    let mut a2 = Vec::with_capacity(m);
    for j in 0..m {
        let col: Vec<ExactScalar> = (0..n).map(|i| a.get(i, j).clone()).collect();
        a2.push(a1.solve(&col)?.expect("column lies in the span of the basis"));
    }
    let rho = basis.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for k in 0..rho {
            let x = a1.get(i, k);
            if !x.is_zero() {
                edges.push(Edge { from: i, to: n + k, label: x.clone() });
            }
        }
    }
    for (j, coeffs) in a2.iter().enumerate() {
        for (k, x) in coeffs.iter().enumerate() {
            if !x.is_zero() {
                edges.push(Edge { from: n + k, to: n + rho + j, label: x.clone() });
            }
        }
    }
    LinearCircuit::new(
        n + rho + m,
        (0..n).collect(),
        (n + rho..n + rho + m).collect(),
        edges,
    )
}

/// `factor_circuit(a, r)` plus the naive circuit of the sparse part `b`.
pub fn rigidity_circuit(a: &ExactMatrix, b: &ExactMatrix, r: usize) -> Result<LinearCircuit> {
    factor_circuit(a, r)?.sum(&naive_circuit(b))
}

/// Positions of the nonzero entries of each radix-2 layer, `n = 2^k`.
///
/// Layer `l` (1-based) is `I_{n/m} ⊗ B_m` with `m = 2^{k+1-l}`, except that the
/// last layer also absorbs the bit-reversal permutation on its columns.
pub fn butterfly_support(k: u32) -> Vec<Vec<(usize, usize)>> {
    dft_layers(k)
        .iter()
        .map(|s| {
            let mut v = Vec::new();
            for i in 0..s.nrows() {
                for j in 0..s.ncols() {
                    if !s.get(i, j).is_zero() {
                        v.push((i, j));
                    }
                }
            }
            v
        })
        .collect()
}

fn bit_reverse(i: usize, k: u32) -> usize {
    if k == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS - k)
    }
}

/// Sparse factors `S_1, …, S_k` with `S_1 ⋯ S_k = DFT_{2^k}`, each with `2n`
/// nonzero entries.
pub fn dft_layers(k: u32) -> Vec<ExactMatrix> {
    assert!(k >= 1, "k must be positive");
    let n = 1usize << k;
    let nc = n as u32;
    // a[l-1] = I_{n/m} ⊗ B_m with m = 2^l.
    let a: Vec<ExactMatrix> = (1..=k)
        .map(|l| {
            let m = 1usize << l;
            let h = m / 2;
            let stride = (n / m) as i64;
            ExactMatrix::from_fn(n, n, |i, j| {
                if i / m != j / m {
                    return ExactScalar::zero().coerce_to(nc).unwrap();
                }
                let (bi, bj) = (i % m, j % m);
                let (top, t) = (bi < h, bi % h);
                if bj == t {
                    ExactScalar::root_power(nc, 0)
                } else if bj == t + h {
                    let w = ExactScalar::root_power(nc, stride * t as i64);
                    if top {
                        w
                    } else {
                        -w
                    }
                } else {
                    ExactScalar::zero().coerce_to(nc).unwrap()
                }
            })
        })
        .collect();
    let mut layers: Vec<ExactMatrix> = a.iter().rev().cloned().collect();
    let last = layers.pop().expect("k >= 1");
    let permuted = ExactMatrix::from_fn(n, n, |i, j| last.get(i, bit_reverse(j, k)).clone());
    layers.push(permuted);
    layers
}

/// Depth-`k` circuit of size `2n·k` computing `DFT_n`, `n = 2^k`.
pub fn dft_circuit(k: u32) -> LinearCircuit {
    let layers = dft_layers(k);
    let mut c = naive_circuit(&layers[0]);
    for s in &layers[1..] {
        c = c.stack(&naive_circuit(s)).expect("square layers compose");
    }
    c
}

/// Smallest size of a circuit family whose matrices fill a variety of
/// dimension `d`: each edge contributes at most one parameter.
pub fn generic_size_lower(d: usize) -> usize {
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{seeded, small_rational};
    use proptest::prelude::*;

    /// Explicit path enumeration, exponential but exact.
    fn path_sum(c: &LinearCircuit) -> ExactMatrix {
        fn walk(c: &LinearCircuit, v: usize, w: ExactScalar, out: &mut HashMap<usize, ExactScalar>) {
            if c.outputs().contains(&v) {
                let slot = out.entry(v).or_insert_with(ExactScalar::zero);
                *slot = &*slot + &w;
            }
            for e in c.edges().iter().filter(|e| e.from == v) {
                walk(c, e.to, &w * &e.label, out);
            }
        }
        ExactMatrix::from_fn(c.inputs().len(), c.outputs().len(), |i, j| {
            let mut out = HashMap::new();
            walk(c, c.inputs()[i], ExactScalar::one(), &mut out);
            out.remove(&c.outputs()[j]).unwrap_or_else(ExactScalar::zero)
        })
    }

    fn sym(i: i64, j: i64) -> ExactScalar {
        ExactScalar::from(10 * i + j)
    }

    fn fig1() -> LinearCircuit {
        naive_circuit(&ExactMatrix::from_fn(2, 3, |i, j| sym(i as i64 + 1, j as i64 + 1)))
    }

    fn fig3() -> LinearCircuit {
        let ones = |r, c| naive_circuit(&ExactMatrix::from_fn(r, c, |_, _| ExactScalar::one()));
        ones(2, 1).stack(&ones(1, 3)).unwrap()
    }

    #[test]
    fn naive_and_figures() {
        let c = fig1();
        assert_eq!((c.size(), c.depth()), (6, 1));
        assert_eq!(c.evaluate(), ExactMatrix::from_fn(2, 3, |i, j| sym(i as i64 + 1, j as i64 + 1)));
        let f3 = fig3();
        assert_eq!((f3.size(), f3.depth()), (5, 2));
        assert_eq!(f3.evaluate(), ExactMatrix::from_fn(2, 3, |_, _| ExactScalar::one()));
        assert_eq!(f3.evaluate(), path_sum(&f3));
        let fig2 = ExactMatrix::from_i64(&[&[1, 2, 3], &[0, 5, 6]]);
        assert_eq!(naive_circuit(&fig2).size(), 5);
        assert_eq!(naive_circuit(&ExactMatrix::zeros(3, 3)).size(), 0);
        let empty = naive_circuit(&ExactMatrix::zeros(2, 2));
        assert_eq!((empty.size(), empty.depth()), (0, 0));
        assert!(empty.evaluate().is_zero());
    }

    #[test]
    fn fig4_sum() {
        let wires = LinearCircuit::new(
            5,
            vec![0, 1],
            vec![2, 3, 4],
            vec![
                Edge { from: 0, to: 2, label: ExactScalar::one() },
                Edge { from: 1, to: 3, label: ExactScalar::one() },
            ],
        )
        .unwrap();
        let s = fig3().sum(&wires).unwrap();
        assert_eq!(s.evaluate(), &fig3().evaluate() + &wires.evaluate());
        assert_eq!(s.evaluate(), ExactMatrix::from_i64(&[&[2, 1, 1], &[1, 2, 1]]));
        let c = fig1();
        assert!(c.sum(&c.negate()).unwrap().evaluate().is_zero());
        assert_eq!(c.sum(&c.negate()).unwrap().size(), 0);
        assert_eq!(c.sum(&naive_circuit(&ExactMatrix::zeros(2, 3))).unwrap().evaluate(), c.evaluate());
        assert!(c.sum(&fig3().stack(&identity_wires(3)).unwrap().stack(&naive_circuit(&ExactMatrix::zeros(3, 2))).unwrap()).is_err());
    }

    #[test]
    fn fig5_and_factor() {
        let left = naive_circuit(&ExactMatrix::from_fn(4, 2, |i, j| ExactScalar::from((i + j + 1) as i64)));
        let right = naive_circuit(&ExactMatrix::from_fn(2, 4, |i, j| ExactScalar::from((2 * i + j + 1) as i64)));
        let c = left.stack(&right).unwrap();
        assert_eq!((c.size(), c.depth()), (16, 2));
        let a = c.evaluate();
        assert_eq!(a.rank(), 2);
        let f = factor_circuit(&a, 2).unwrap();
        assert!(f.size() <= 16);
        assert_eq!(f.evaluate(), a);
        let ones = ExactMatrix::from_fn(2, 3, |_, _| ExactScalar::one());
        let f3 = factor_circuit(&ones, 1).unwrap();
        assert_eq!(f3.size(), 5);
        assert_eq!(f3.evaluate(), ones);
        let z = factor_circuit(&ExactMatrix::zeros(3, 3), 0).unwrap();
        assert_eq!((z.size(), z.num_nodes()), (0, 6));
        assert_eq!(
            factor_circuit(&ExactMatrix::identity(3), 2).unwrap_err(),
            Error::RankTooLarge { rank: 3, bound: 2 }
        );
        assert_eq!(c.stack(&identity_wires(4)).unwrap().evaluate(), a);
    }

    #[test]
    fn rigidity_circuit_adds() {
        let a = ExactMatrix::from_fn(3, 3, |i, j| ExactScalar::from(((i + 1) * (j + 2)) as i64));
        let mut b = ExactMatrix::zeros(3, 3);
        b.set(1, 2, ExactScalar::from(7)).unwrap();
        let c = rigidity_circuit(&a, &b, 1).unwrap();
        assert!(c.size() <= 7);
        assert_eq!(c.evaluate(), &a + &b);
        assert_eq!(rigidity_circuit(&a, &ExactMatrix::zeros(3, 3), 1).unwrap().evaluate(), a);
        let z = rigidity_circuit(&ExactMatrix::zeros(3, 3), &b, 0).unwrap();
        assert_eq!((z.size(), z.evaluate()), (1, b));
    }

    #[test]
    fn invalid_circuits() {
        let e = |from, to| Edge { from, to, label: ExactScalar::one() };
        assert_eq!(
            LinearCircuit::new(4, vec![0], vec![3], vec![e(0, 1), e(1, 2), e(2, 1), e(2, 3)]).unwrap_err(),
            Error::CycleDetected
        );
        assert!(LinearCircuit::new(2, vec![0], vec![1], vec![Edge { from: 0, to: 1, label: ExactScalar::zero() }]).is_err());
        assert!(LinearCircuit::new(2, vec![0], vec![1], vec![e(1, 0)]).is_err());
        assert!(LinearCircuit::new(2, vec![0], vec![0], vec![]).is_err());
    }

    #[test]
    fn dft_circuit_shapes() {
        let c1 = dft_circuit(1);
        assert_eq!(c1.size(), 4);
        assert_eq!(c1.evaluate(), ExactMatrix::from_i64(&[&[1, 1], &[1, -1]]));
        let c3 = dft_circuit(3);
        assert_eq!((c3.size(), c3.depth()), (48, 3));
        for k in 1..=5u32 {
            let c = dft_circuit(k);
            assert_eq!(c.size(), (1usize << (k + 1)) * k as usize);
            assert_eq!(c.depth(), k as usize);
            for s in butterfly_support(k) {
                assert_eq!(s.len(), 2 << k);
            }
        }
        let i = ExactScalar::root_of_unity(4);
        let f4 = dft_circuit(2).evaluate();
        let row2: Vec<ExactScalar> = f4.row(1).to_vec();
        assert_eq!(row2, vec![ExactScalar::one(), i.clone(), ExactScalar::from(-1), -i]);
    }

    #[test]
    fn json_and_dot() {
        let c = dft_circuit(2);
        let back = LinearCircuit::from_json(&c.to_json()).unwrap();
        assert_eq!(back.evaluate(), c.evaluate());
        assert!(c.to_dot().starts_with("digraph"));
    }

    #[test]
    fn generic_sizes() {
        assert_eq!(generic_size_lower(8 * (3 + 1)), 32);
        assert_eq!(generic_size_lower(0), 0);
        assert_eq!(generic_size_lower(49), 49);
    }

    fn random_circuit(seed: u64, n_in: usize, n_out: usize, hidden: usize, max_edges: usize) -> LinearCircuit {
        use rand::Rng;
        let mut rng = seeded(seed);
        let total = n_in + hidden + n_out;
        // Node order: inputs, hidden, outputs; edges go forward only.
        let mut edges = Vec::new();
        for _ in 0..max_edges {
            let from = rng.gen_range(0..n_in + hidden);
            let lo = (from + 1).max(n_in);
            if lo >= total {
                continue;
            }
            let to = rng.gen_range(lo..total);
            edges.push(Edge { from, to, label: small_rational(&mut rng) });
        }
        let mut merged: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
        for e in edges {
            let s = merged.entry((e.from, e.to)).or_insert_with(ExactScalar::zero);
            *s = &*s + &e.label;
        }
        let edges = merged
            .into_iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|((from, to), label)| Edge { from, to, label })
            .collect();
        LinearCircuit::new(total, (0..n_in).collect(), (n_in + hidden..total).collect(), edges).unwrap()
    }

    proptest! {
        #[test]
        fn sum_and_stack_are_matrix_operations(seed in any::<u64>(), a in 1..=5usize, b in 1..=5usize, c in 1..=5usize, h in 0..4usize) {
            let c1 = random_circuit(seed, a, b, h, 20);
            let c2 = random_circuit(seed ^ 0xabcdef, a, b, h, 20);
            let c3 = random_circuit(seed.wrapping_add(7), b, c, h, 20);
            prop_assert_eq!(c1.evaluate(), path_sum(&c1));
            prop_assert_eq!(c1.sum(&c2).unwrap().evaluate(), &c1.evaluate() + &c2.evaluate());
            prop_assert_eq!(c1.stack(&c3).unwrap().evaluate(), &c1.evaluate() * &c3.evaluate());
        }

        #[test]
        fn naive_circuit_round_trips(v in prop::collection::vec(-3i64..=3, 12)) {
            let m = ExactMatrix::from_vec(3, 4, v.into_iter().map(ExactScalar::from).collect()).unwrap();
            let c = naive_circuit(&m);
            prop_assert_eq!(c.size(), m.nnz());
            prop_assert_eq!(c.evaluate(), m);
        }
    }
}
