//! Classification reports and the class-string enumeration.

use serde::{Deserialize, Serialize};
use slocc_core::multiqubit::{ClassLabel, Occurrence, StructureDescriptor};
use slocc_core::numerics::Mat2;
use slocc_core::TolerancePolicy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bipartite,
    Tripartite,
    Multiqubit,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Bipartite => "bipartite",
            Mode::Tripartite => "tripartite",
            Mode::Multiqubit => "multiqubit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceReport {
    pub rank_rel_tol: f64,
    pub deg_tol: f64,
    pub residual_tol: f64,
}

impl From<&TolerancePolicy> for ToleranceReport {
    fn from(p: &TolerancePolicy) -> Self {
        ToleranceReport {
            rank_rel_tol: p.rank_rel_tol,
            deg_tol: p.deg_tol,
            residual_tol: p.residual_tol,
        }
    }
}

/// Row-major 2×2 complex matrix, entries as `[re, im]`.
pub type Matrix2 = [[[f64; 2]; 2]; 2];

pub fn matrix2(m: &Mat2) -> Matrix2 {
    m.0.map(|row| row.map(|z| [z.re, z.im]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IloReport {
    /// `F1, F2, F3` with `(F1 ⊗ F2 ⊗ F3) Ψ` the canonical vector.
    pub operators: Vec<Matrix2>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub class: String,
    /// `"generic"` or `"exceptional"`.
    pub occurrence: String,
    /// Number of exceptional points; 0 for the generic entry.
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescriptorReport {
    pub dim_w: usize,
    pub line_class: Option<String>,
    pub profile: Vec<ProfileReport>,
    /// Cross-ratio of four exceptional points as `[re, im]`.
    pub cross_ratio: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    /// 1-based qubit carrying a single-qubit factor.
    pub qubit: usize,
    pub factor: [[f64; 2]; 2],
    /// Class string of the remaining three qubits, when there are three.
    pub reduced_class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub label: Option<String>,
    pub mode: Mode,
    pub dims: Vec<usize>,
    pub pivot: usize,
    pub class: String,
    pub ranks: Vec<usize>,
    pub singular_values: Vec<f64>,
    pub structure: Option<String>,
    pub near_boundary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ilos: Option<IloReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<DescriptorReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<FactorReport>,
    pub tolerance: ToleranceReport,
}

fn label_string(label: &ClassLabel) -> String {
    match label {
        ClassLabel::Tri(c) => c.label().to_string(),
        ClassLabel::Multi(d) => descriptor_string(d),
    }
}

/// `line(<class>)` for a one-dimensional subspace, otherwise
/// `span(<generic>; <class> x<k>; ...)` with exceptional entries sorted.
pub fn descriptor_string(d: &StructureDescriptor) -> String {
    if let Some(line) = &d.line_class {
        return format!("line({})", label_string(line));
    }
    let mut generic = Vec::new();
    let mut exceptional = Vec::new();
    for e in &d.profile {
        match &e.occurrence {
            Occurrence::Generic => generic.push(label_string(&e.class)),
            Occurrence::Exceptional(p) => exceptional.push(format!("{} x{}", label_string(&e.class), p.len())),
        }
    }
    exceptional.sort();
    generic.extend(exceptional);
    format!("span({})", generic.join("; "))
}

pub fn descriptor_report(d: &StructureDescriptor) -> DescriptorReport {
    DescriptorReport {
        dim_w: d.dim_w,
        line_class: d.line_class.as_ref().map(label_string),
        profile: d
            .profile
            .iter()
            .map(|e| match &e.occurrence {
                Occurrence::Generic => ProfileReport {
                    class: label_string(&e.class),
                    occurrence: "generic".into(),
                    points: 0,
                },
                Occurrence::Exceptional(p) => ProfileReport {
                    class: label_string(&e.class),
                    occurrence: "exceptional".into(),
                    points: p.len(),
                },
            })
            .collect(),
        cross_ratio: d.continuous_params.cross_ratio.map(|z| [z.re, z.im]),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k:<16}{v}\n"));
        if let Some(l) = &self.label {
            line("label", l.clone());
        }
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        line("dims", dims.join(" "));
        line("mode", format!("{} (pivot {})", self.mode.name(), self.pivot));
        line("class", self.class.clone());
        let ranks: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
        line("ranks", ranks.join(" "));
        let sv: Vec<String> = self.singular_values.iter().map(|s| format!("{s:.12e}")).collect();
        line("singular values", sv.join(" "));
        if let Some(s) = &self.structure {
            line("structure", s.clone());
        }
        line("near boundary", if self.near_boundary { "yes" } else { "no" }.into());
        if let Some(f) = &self.factor {
            let v = format!(
                "qubit {} ({:+.6}{:+.6}i, {:+.6}{:+.6}i){}",
                f.qubit,
                f.factor[0][0],
                f.factor[0][1],
                f.factor[1][0],
                f.factor[1][1],
                f.reduced_class.as_ref().map(|c| format!(", rest {c}")).unwrap_or_default()
            );
            line("factor", v);
        }
        if let Some(ilo) = &self.ilos {
            for (k, m) in ilo.operators.iter().enumerate() {
                let rows: Vec<String> = m
                    .iter()
                    .map(|r| format!("[{:+.9e}{:+.9e}i, {:+.9e}{:+.9e}i]", r[0][0], r[0][1], r[1][0], r[1][1]))
                    .collect();
                line(&format!("F{}", k + 1), rows.join(" "));
            }
            line("residual", format!("{:.3e}", ilo.residual));
        }
        let t = &self.tolerance;
        line(
            "tolerance",
            format!("rankRelTol {:e}, degTol {:e}, residualTol {:e}", t.rank_rel_tol, t.deg_tol, t.residual_tol),
        );
        out
    }
}
