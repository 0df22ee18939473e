//! Shifted power iteration on `A + I`.
//!
//! Bipartite components carry the eigenvalue pair `±λ`, which stalls plain
//! power iteration; on `A + I` the dominant eigenvalue of each connected
//! component is simple, so the iteration converges to the Perron pair.
//! Convergence is declared when both the Rayleigh quotient change and the
//! infinity-norm residual `‖A x − λ x‖∞` (max-normalised `x`) drop below
//! the tolerance.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Real;

/// Above this order the eigenvector is left out of JSON output.
pub const VECTOR_JSON_LIMIT: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct PowerOptions<T> {
    pub tolerance: T,
    pub max_iterations: usize,
}

impl<T: Real> Default for PowerOptions<T> {
    fn default() -> Self {
        PowerOptions {
            tolerance: T::of(crate::DEFAULT_TOLERANCE),
            max_iterations: 1_000_000,
        }
    }
}

impl<T: Real> PowerOptions<T> {
    pub fn with_tolerance(tolerance: T) -> Self {
        PowerOptions { tolerance, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult<T> {
    pub radius: T,
    /// Per-vertex entries in `[0, 1]`, max entry 1; zero outside the
    /// component that attains the radius.
    pub vector: Vec<T>,
    pub iterations: usize,
    pub residual: T,
}

impl<T: Real> Serialize for SpectralResult<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let with_vector = self.vector.len() <= VECTOR_JSON_LIMIT;
        let mut st = s.serialize_struct("SpectralResult", 3 + usize::from(with_vector))?;
        st.serialize_field("radius", &self.radius.as_f64())?;
        st.serialize_field("residual", &self.residual.as_f64())?;
        st.serialize_field("iterations", &self.iterations)?;
        if with_vector {
            let v: Vec<f64> = self.vector.iter().map(|x| x.as_f64()).collect();
            st.serialize_field("vector", &v)?;
        } else {
            st.skip_field("vector")?;
        }
        st.end()
    }
}

struct Component<T> {
    radius: T,
    vector: Vec<T>,
    iterations: usize,
    residual: T,
}

fn iterate_component<T: Real>(adj: &[Vec<usize>], opts: &PowerOptions<T>) -> Result<Component<T>> {
    let n = adj.len();
    if n == 1 {
        return Ok(Component {
            radius: T::zero(),
            vector: vec![T::one()],
            iterations: 0,
            residual: T::zero(),
        });
    }
    let tol = opts.tolerance;
    let mut x = vec![T::one(); n];
    let mut ax = vec![T::zero(); n];
    let mut prev = T::infinity();
    let mut best = (T::zero(), T::infinity());
    for it in 1..=opts.max_iterations {
        for (v, nb) in adj.iter().enumerate() {
            ax[v] = nb.iter().map(|&w| x[w]).sum();
        }
        let num: T = x.iter().zip(&ax).map(|(&a, &b)| a * b).sum();
        let den: T = x.iter().map(|&a| a * a).sum();
        let mu = num / den;
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(&a, &b)| (b - mu * a).abs())
            .fold(T::zero(), T::max);
        best = (mu, residual);
        if (mu - prev).abs() <= tol && residual <= tol {
            return Ok(Component { radius: mu, vector: x, iterations: it, residual });
        }
        prev = mu;
        let mut top = T::zero();
        for v in 0..n {
            ax[v] += x[v];
            top = top.max(ax[v]);
        }
        for v in 0..n {
            x[v] = ax[v] / top;
        }
    }
    Err(Error::NotConverged {
        estimate: best.0.as_f64(),
        residual: best.1.as_f64(),
        iterations: opts.max_iterations,
    })
}

/// Largest adjacency eigenvalue; for a disconnected graph, the maximum over
/// components.
pub fn spectral_radius_with<T: Real>(g: &Graph, opts: &PowerOptions<T>) -> Result<SpectralResult<T>> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(opts.tolerance > T::zero()) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let mut best: Option<(Vec<usize>, Component<T>)> = None;
    let mut iterations = 0;
    for comp in g.components() {
        let local: Vec<Vec<usize>> = comp
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .map(|w| comp.binary_search(&w).expect("neighbour in component"))
                    .collect()
            })
            .collect();
        let c = iterate_component(&local, opts)?;
        iterations += c.iterations;
        if best.as_ref().is_none_or(|(_, b)| c.radius > b.radius) {
            best = Some((comp, c));
        }
    }
    let (comp, c) = best.expect("nonempty graph has a component");
    let mut vector = vec![T::zero(); g.order()];
    for (i, &v) in comp.iter().enumerate() {
        vector[v] = c.vector[i];
    }
    Ok(SpectralResult { radius: c.radius, vector, iterations, residual: c.residual })
}

pub fn spectral_radius<T: Real>(g: &Graph, tolerance: T) -> Result<SpectralResult<T>> {
    spectral_radius_with(g, &PowerOptions::with_tolerance(tolerance))
}

/// Perron vector of a connected graph at the default tolerance.
pub fn perron_vector<T: Real>(g: &Graph) -> Result<SpectralResult<T>> {
    perron_vector_with(g, &PowerOptions::default())
}

pub fn perron_vector_with<T: Real>(g: &Graph, opts: &PowerOptions<T>) -> Result<SpectralResult<T>> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    spectral_radius_with(g, opts)
}

/// `2e(G)/n`, the Rayleigh quotient of the all-ones vector.
pub fn rayleigh_lower_bound<T: Real>(g: &Graph) -> T {
    if g.order() == 0 {
        return T::zero();
    }
    T::of_usize(2 * g.edge_count()) / T::of_usize(g.order())
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RotationOutcome {
    /// Whether `xᵀA'x ≥ xᵀAx` for the Perron vector `x` of `G`.
    pub premise_holds: bool,
    /// `xᵀ(A' − A)x`.
    pub quadratic_gain: f64,
    pub radius_before: f64,
    pub radius_after: f64,
}

impl RotationOutcome {
    /// The conclusion `λ(G') > λ(G)` up to `tolerance`.
    pub fn radius_increased(&self, tolerance: f64) -> bool {
        self.radius_after > self.radius_before - tolerance
    }
}

/// Checks the quadratic-form premise of the neighbourhood-growth
/// comparison: with `N_G(u) ⊊ N_{G'}(u)` and `x` the Perron vector of `G`,
/// `xᵀA'x ≥ xᵀAx` forces `λ(G') > λ(G)`.
pub fn rotation_test(g: &Graph, g_prime: &Graph, u: usize, tolerance: f64) -> Result<RotationOutcome> {
    if g.order() != g_prime.order() {
        return Err(Error::invalid("graphs differ in order"));
    }
    if u >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: u, order: g.order() });
    }
    let nb: Vec<usize> = g.neighbors(u).collect();
    let nb_prime: Vec<usize> = g_prime.neighbors(u).collect();
    let contained = nb.iter().all(|w| g_prime.has_edge(u, *w));
    if !contained || nb_prime.len() <= nb.len() {
        return Err(Error::invalid(format!(
            "N_G({u}) is not strictly contained in N_G'({u})"
        )));
    }
    if !g_prime.is_connected() {
        return Err(Error::Disconnected);
    }
    let opts = PowerOptions::with_tolerance(tolerance);
    let before = perron_vector_with::<f64>(g, &opts)?;
    let after = spectral_radius_with::<f64>(g_prime, &opts)?;
    let x = &before.vector;
    let form = |h: &Graph| -> f64 {
        h.edges().iter().map(|(a, b)| 2.0 * x[a] * x[b]).sum()
    };
    let gain = form(g_prime) - form(g);
    Ok(RotationOutcome {
        premise_holds: gain >= -tolerance,
        quadratic_gain: gain,
        radius_before: before.radius,
        radius_after: after.radius,
    })
}
