//! The `classify`, `canonical` and `bound` verbs, independent of argument
//! parsing.

use std::fmt;

use slocc_core::multiqubit::DescriptorConfig;
use slocc_core::numerics::svd;
use slocc_core::{
    canonical_vector, class_count_bound, classify3, classify3_with_pivot, classify_bipartite, descriptor_with,
    factor_support, reduce_to_canonical, schmidt, Error, PureState, TolerancePolicy, TripartiteClass,
};

use crate::report::{descriptor_report, descriptor_string, matrix2, FactorReport, IloReport, Mode, Report};
use crate::state_file::{ParseError, StateFile};

/// A failed command: message for standard error and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;
pub const EXIT_REDUCTION: u8 = 4;

fn fail(code: u8, message: impl Into<String>) -> CliError {
    CliError {
        code,
        message: message.into(),
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        fail(EXIT_PARSE, e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ReductionFailed { .. } => EXIT_REDUCTION,
            Error::UnsupportedDepth { .. } | Error::NotQubits | Error::WrongArity { .. } => EXIT_UNSUPPORTED,
            Error::BadPivot { .. } | Error::InvalidPolicy(_) | Error::InvalidArgument(_) => EXIT_PARSE,
            Error::DimensionMismatch(_) | Error::ZeroState | Error::NonFinite => EXIT_PARSE,
            _ => EXIT_INTERNAL,
        };
        fail(code, e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyOptions {
    /// Overrides `rank_rel_tol`; `deg_tol` becomes ten times this.
    pub tol: Option<f64>,
    pub ilos: bool,
    pub pivot: usize,
    pub json_in: bool,
    pub max_depth: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            tol: None,
            ilos: false,
            pivot: 1,
            json_in: false,
            max_depth: DescriptorConfig::default().max_qubits,
        }
    }
}

impl ClassifyOptions {
    pub fn policy(&self) -> Result<TolerancePolicy, CliError> {
        match self.tol {
            None => Ok(TolerancePolicy::default()),
            Some(t) => Ok(TolerancePolicy::new(t, 10.0 * t, TolerancePolicy::default().residual_tol)?),
        }
    }
}

fn near_boundary(sigma: &[f64], pol: &TolerancePolicy) -> bool {
    let t = pol.rank_rel_tol;
    sigma
        .iter()
        .skip(1)
        .any(|s| (t / 10.0..=10.0 * t).contains(&(s / sigma[0])))
}

pub fn classify_source(src: &str, opts: &ClassifyOptions) -> Result<Report, CliError> {
    let file = if opts.json_in {
        StateFile::parse_json(src)?
    } else {
        StateFile::parse_text(src)?
    };
    let state = file.to_state()?;
    classify_state(&state, file.label, opts)
}

pub fn classify_state(state: &PureState, label: Option<String>, opts: &ClassifyOptions) -> Result<Report, CliError> {
    let pol = opts.policy()?;
    let n = state.n_subsystems();
    if opts.pivot == 0 || opts.pivot > n {
        return Err(Error::BadPivot { pivot: opts.pivot, n }.into());
    }
    if opts.ilos && !(n == 3 && state.is_qubits()) {
        return Err(fail(EXIT_UNSUPPORTED, "--ilos needs a three-qubit state"));
    }
    let mut report = Report {
        label,
        mode: Mode::Bipartite,
        dims: state.dims().to_vec(),
        pivot: opts.pivot,
        class: String::new(),
        ranks: Vec::new(),
        singular_values: Vec::new(),
        structure: None,
        near_boundary: false,
        ilos: None,
        descriptor: None,
        factor: None,
        tolerance: (&pol).into(),
    };
    match n {
        2 => {
            let c = classify_bipartite(state, &pol)?;
            let s = schmidt(state, &pol)?;
            report.class = c.label([state.dims()[0], state.dims()[1]]);
            report.ranks = vec![c.schmidt_rank];
            report.near_boundary = near_boundary(&svd(&state.coefficient_matrix(1)?.matrix)?.sigma, &pol);
            report.singular_values = s.coeffs;
        }
        3 if state.is_qubits() => {
            let r = classify3_with_pivot(state, opts.pivot, &pol)?;
            report.mode = Mode::Tripartite;
            report.class = r.class.label().to_string();
            report.ranks = r.ranks.to_vec();
            report.singular_values = r.sigma.clone();
            report.structure = Some(r.structure.tag().name().to_string());
            report.near_boundary = r.near_boundary;
            if opts.ilos {
                let (_, ilo) = reduce_to_canonical(state, &pol)?;
                report.ilos = Some(IloReport {
                    operators: ilo.f.iter().map(matrix2).collect(),
                    residual: ilo.residual,
                });
            }
        }
        _ if n >= 4 && state.is_qubits() => {
            // pivot qubit first, the others in file order
            let order: Vec<usize> = std::iter::once(opts.pivot).chain((1..=n).filter(|&k| k != opts.pivot)).collect();
            let moved = state.permuted(&order)?;
            let cfg = DescriptorConfig {
                max_qubits: opts.max_depth,
                ..Default::default()
            };
            let d = descriptor_with(&moved, &pol, &cfg)?;
            let sigma = svd(&moved.coefficient_matrix(1)?.matrix)?.sigma;
            report.mode = Mode::Multiqubit;
            report.class = descriptor_string(&d);
            report.ranks = vec![d.dim_w];
            report.near_boundary = near_boundary(&sigma, &pol);
            report.singular_values = sigma;
            report.descriptor = Some(descriptor_report(&d));
            report.factor = factor_support(&moved, &pol)
                .map(|f| -> Result<FactorReport, CliError> {
                    let reduced_class = if f.reduced.n_subsystems() == 3 {
                        Some(classify3(&f.reduced, &pol)?.class.label().to_string())
                    } else {
                        None
                    };
                    Ok(FactorReport {
                        qubit: order[f.qubit - 1],
                        factor: f.factor.map(|z| [z.re, z.im]),
                        reduced_class,
                    })
                })
                .transpose()?;
        }
        _ => {
            return Err(fail(
                EXIT_UNSUPPORTED,
                format!("unsupported dimensions {:?}: need two subsystems, or three or more qubits", state.dims()),
            ))
        }
    }
    Ok(report)
}

/// Names accepted by `canonical`: the six three-qubit classes, GHZ4 and the
/// two two-qubit classes.
pub const CANONICAL_NAMES: [&str; 9] = ["000", "0_1 Psi+_23", "0_2 Psi+_13", "0_3 Psi+_12", "GHZ", "W", "GHZ4", "00", "Psi+"];

pub fn canonical_state(name: &str) -> Result<PureState, CliError> {
    let kets = |k: &[&str]| PureState::qubits(k).expect("fixed kets");
    match name.trim() {
        "GHZ4" => Ok(kets(&["0000", "1111"])),
        "00" => Ok(kets(&["00"])),
        "Psi+" => Ok(kets(&["00", "11"])),
        other => match TripartiteClass::from_label(other) {
            Some(c) => Ok(canonical_vector(c)),
            None => Err(fail(
                EXIT_PARSE,
                format!("unknown class '{other}'; expected one of: {}", CANONICAL_NAMES.join(", ")),
            )),
        },
    }
}

pub fn canonical(name: &str, json: bool) -> Result<String, CliError> {
    let state = canonical_state(name)?;
    let file = StateFile::from_state(&state, Some(name.trim().to_string()));
    Ok(if json { file.to_json() } else { file.to_text() })
}

pub fn bound(m_n: u64, n: u64) -> Result<String, CliError> {
    let b = class_count_bound(m_n, n)?;
    Ok(format!("{}\n", b.bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn canonical_round_trip() {
        for name in CANONICAL_NAMES {
            let text = canonical(name, false).unwrap();
            let r = classify_source(&text, &ClassifyOptions::default()).unwrap();
            if name == "GHZ4" {
                assert_eq!(r.class, "span(GHZ; 000 x2)");
            } else {
                assert_eq!(r.class, name);
            }
            assert_eq!(r.label.as_deref(), Some(name));
        }
    }

    #[test]
    fn canonical_amplitudes() {
        let w = canonical_state("W").unwrap();
        let nz: Vec<usize> = (0..8).filter(|&k| w.amps()[k].re != 0.0).collect();
        assert_eq!(nz, vec![0b001, 0b010, 0b100]);
        let p = canonical_state("000").unwrap();
        assert_eq!(p.amps().iter().filter(|z| z.re != 0.0).count(), 1);
        assert_eq!(canonical_state("X").unwrap_err().code, EXIT_PARSE);
    }

    #[test]
    fn bound_values() {
        assert_eq!(bound(6, 3).unwrap(), "45\n");
        assert_eq!(bound(1, 2).unwrap(), "4\n");
        assert_eq!(bound(0, 3).unwrap_err().code, EXIT_PARSE);
    }

    #[test]
    fn exit_codes() {
        let o = ClassifyOptions::default();
        let five = canonical_state("GHZ4").unwrap().tensor(&PureState::qubits(&["0"]).unwrap());
        assert_eq!(classify_state(&five, None, &o).unwrap_err().code, EXIT_UNSUPPORTED);
        let deep = ClassifyOptions { max_depth: 5, ..o.clone() };
        assert!(classify_state(&five, None, &deep).is_ok());
        let qutrits = PureState::new(vec![3, 3, 3], vec![C64::new(1.0, 0.0); 27]).unwrap();
        assert_eq!(classify_state(&qutrits, None, &o).unwrap_err().code, EXIT_UNSUPPORTED);
        let bad_pivot = ClassifyOptions { pivot: 4, ..o.clone() };
        assert_eq!(classify_state(&canonical_state("W").unwrap(), None, &bad_pivot).unwrap_err().code, EXIT_PARSE);
        let bell_ilos = ClassifyOptions { ilos: true, ..o };
        assert_eq!(classify_state(&canonical_state("Psi+").unwrap(), None, &bell_ilos).unwrap_err().code, EXIT_UNSUPPORTED);
        assert_eq!(CliError::from(Error::ReductionFailed { residual: 1.0 }).code, EXIT_REDUCTION);
    }

    #[test]
    fn pivot_maps_classes_back() {
        let s = PureState::qubits(&["000", "011"]).unwrap();
        for pivot in 1..=3 {
            let o = ClassifyOptions { pivot, ..Default::default() };
            assert_eq!(classify_state(&s, None, &o).unwrap().class, "0_1 Psi+_23");
        }
    }

    #[test]
    fn four_qubit_factor() {
        let s = PureState::qubits(&["0000", "0011"]).unwrap();
        let r = classify_state(&s, None, &ClassifyOptions::default()).unwrap();
        let f = r.factor.unwrap();
        assert_eq!(f.qubit, 2);
        assert_eq!(f.reduced_class.as_deref(), Some("0_1 Psi+_23"));
        assert_eq!(r.class, "line(0_1 Psi+_23)");
    }
}
