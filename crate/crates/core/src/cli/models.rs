use crate::error::{Error, Result};
use crate::transform::{FermionHamiltonian, FermionOp, FermionTerm};

/// Fermi-Hubbard lattice parameters. Sites are numbered row by row,
/// `(r, c) -> r * cols + c + 1`; spin-up modes come first and spin-down
/// modes are offset by `rows * cols`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HubbardParams {
    pub rows: usize,
    pub cols: usize,
    pub hopping: f64,
    pub interaction: f64,
    /// Wrap each row around. Ignored for `cols <= 2`, where the wrapping
    /// edge would duplicate the existing one.
    pub periodic: bool,
    pub lattice: Lattice,
}

/// Which horizontal links the rows carry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Lattice {
    /// Every row is a chain; neighbouring rows are joined site by site.
    #[default]
    Ladder,
    /// Only the first row is a chain; later rows keep just their periodic
    /// wrap link. On the periodic 2x5 lattice this leaves 11 edges, and its
    /// term and gate counts are the reference table counts.
    Reduced,
}

impl Default for HubbardParams {
    fn default() -> Self {
        HubbardParams {
            rows: 2,
            cols: 5,
            hopping: 1.0,
            interaction: 1.0,
            periodic: true,
            lattice: Lattice::Ladder,
        }
    }
}

/// Undirected lattice edges `(i, j)` with `i < j`, on site numbers.
pub fn hubbard_edges(rows: usize, cols: usize, periodic: bool, lattice: Lattice) -> Vec<(usize, usize)> {
    let site = |r: usize, c: usize| r * cols + c + 1;
    let mut edges = Vec::new();
    for r in 0..rows {
        if r == 0 || lattice == Lattice::Ladder {
            for c in 0..cols.saturating_sub(1) {
                edges.push((site(r, c), site(r, c + 1)));
            }
        }
        if periodic && cols > 2 {
            edges.push((site(r, 0), site(r, cols - 1)));
        }
    }
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols {
            edges.push((site(r, c), site(r + 1, c)));
        }
    }
    edges
}

/// `-t sum_<ij> (c†_i c_j + c†_j c_i)` in both spin sectors plus
/// `U sum_j n_j n_{j+M}` with `M = rows * cols`.
pub fn gen_hubbard(p: HubbardParams) -> Result<FermionHamiltonian> {
    let sites = p.rows * p.cols;
    if sites == 0 {
        return Err(Error::Input("the lattice needs at least one site".into()));
    }
    let mut h = FermionHamiltonian::new(2 * sites);
    let edges = hubbard_edges(p.rows, p.cols, p.periodic, p.lattice);
    if p.hopping != 0.0 {
        for offset in [0, sites] {
            for &(i, j) in &edges {
                h.push(FermionTerm::hop(-p.hopping, i + offset, j + offset))?;
                h.push(FermionTerm::hop(-p.hopping, j + offset, i + offset))?;
            }
        }
    }
    if p.interaction != 0.0 {
        for j in 1..=sites {
            h.push(FermionTerm::density_density(p.interaction, j, j + sites))?;
        }
    }
    Ok(h)
}

/// One- and two-body integrals of the minimal-basis hydrogen molecule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H2Params {
    pub h11: f64,
    pub h22: f64,
    pub h1331: f64,
    pub h2442: f64,
    pub h1221: f64,
    pub h1212: f64,
}

impl Default for H2Params {
    fn default() -> Self {
        H2Params {
            h11: 1.0,
            h22: 0.5,
            h1331: 0.2,
            h2442: 0.2,
            h1221: 0.3,
            h1212: 0.1,
        }
    }
}

/// The fourteen-term molecular Hamiltonian on four spin orbitals. Terms with
/// a zero coefficient are left out.
pub fn gen_h2(p: H2Params) -> FermionHamiltonian {
    let exchange = p.h1221 - p.h1212;
    let terms: [(f64, [usize; 4]); 10] = [
        (p.h1331, [1, 3, 3, 1]),
        (p.h2442, [2, 4, 4, 2]),
        (p.h1221, [1, 4, 4, 1]),
        (p.h1221, [3, 2, 2, 3]),
        (exchange, [1, 2, 2, 1]),
        (exchange, [3, 4, 4, 3]),
        (p.h1212, [1, 4, 3, 2]),
        (p.h1212, [2, 3, 4, 1]),
        (p.h1212, [1, 3, 4, 2]),
        (p.h1212, [2, 4, 3, 1]),
    ];
    let mut h = FermionHamiltonian::new(4);
    for (coeff, modes) in [(-p.h11, 1), (-p.h11, 3), (-p.h22, 2), (-p.h22, 4)] {
        if coeff != 0.0 {
            h.push(FermionTerm::hop(coeff, modes, modes)).expect("modes 1..4");
        }
    }
    for (coeff, [a, b, c, d]) in terms {
        if coeff != 0.0 {
            let ops = vec![
                FermionOp::create(a),
                FermionOp::create(b),
                FermionOp::annihilate(c),
                FermionOp::annihilate(d),
            ];
            h.push(FermionTerm::real(coeff, ops)).expect("modes 1..4");
        }
    }
    h
}
