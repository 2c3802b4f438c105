//! Serializable views of specs, reports, groups and graphs.

use serde::{Deserialize, Serialize};

use circsym_core::circulant::connectivity;
use circsym_core::group::{AutGroup, GroupVerification};
use circsym_core::symparams::{table1_row, AppendixReport, SpecVerification};
use circsym_core::{Graph, GraphSpec, Method, Result, SymmetryReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDto {
    pub label: String,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub arc: Option<String>,
    pub p: Option<usize>,
    pub vertices: usize,
}

impl From<&GraphSpec> for SpecDto {
    fn from(spec: &GraphSpec) -> Self {
        let (n, i, j) = spec.base().as_tuple();
        let (arc, p) = match spec {
            GraphSpec::Base(_) => (None, None),
            GraphSpec::Subdivided(s) => (Some(s.arc().as_str().to_string()), Some(s.p())),
        };
        SpecDto { label: spec.to_string(), n, i, j, arc, p, vertices: spec.vertex_count() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDto {
    pub spec: SpecDto,
    pub connected: bool,
    pub twin_class: String,
    pub det: usize,
    pub dist: usize,
    pub cost: Option<usize>,
    pub det_witness: Vec<usize>,
    pub dist_witness: Vec<usize>,
    pub cost_witness: Option<Vec<usize>>,
    pub aut_order: Option<u64>,
    pub method: String,
    pub family: String,
    pub condition: String,
    /// Position of the summary-table row, used to bucket and order output.
    pub row: usize,
}

impl ReportDto {
    pub fn new(spec: &GraphSpec, report: &SymmetryReport, aut_order: Option<u64>) -> Result<Self> {
        let row = table1_row(spec)?;
        Ok(ReportDto {
            spec: spec.into(),
            connected: spec.is_connected(),
            twin_class: spec.twin_classification()?.variant.as_str().to_string(),
            det: report.det,
            dist: report.dist,
            cost: report.cost,
            det_witness: report.det_witness.clone(),
            dist_witness: report.dist_witness.clone(),
            cost_witness: report.cost_witness.clone(),
            aut_order,
            method: report.method.as_str().to_string(),
            family: row.family.to_string(),
            condition: row.condition.to_string(),
            row: row.index,
        })
    }

    pub fn is_search(&self) -> bool {
        self.method == Method::Search.as_str()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDto {
    pub structure_tag: String,
    pub order: u64,
    pub generators: Vec<String>,
}

impl From<&AutGroup> for GroupDto {
    fn from(g: &AutGroup) -> Self {
        GroupDto {
            structure_tag: g.structure_tag.to_string(),
            order: g.order(),
            generators: g.generators.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDto {
    pub spec: SpecDto,
    pub group_status: String,
    pub group_detail: Option<String>,
    pub closed_order: u64,
    pub brute_order: Option<u64>,
    pub params_status: String,
    pub params_detail: Option<String>,
    pub closed: [Option<usize>; 3],
    pub search: Option<[Option<usize>; 3]>,
}

fn triple(r: &SymmetryReport) -> [Option<usize>; 3] {
    [Some(r.det), Some(r.dist), r.cost]
}

impl VerifyDto {
    pub fn new(group: &GroupVerification, params: &SpecVerification) -> Self {
        VerifyDto {
            spec: (&params.spec).into(),
            group_status: group.status.label().to_string(),
            group_detail: group.status.detail().map(str::to_string),
            closed_order: group.closed_form_order,
            brute_order: group.brute_order,
            params_status: params.status.label().to_string(),
            params_detail: params.status.detail().map(str::to_string),
            closed: triple(&params.closed),
            search: params.search.as_ref().map(triple),
        }
    }

    pub fn has_mismatch(&self) -> bool {
        self.group_status == "MISMATCH" || self.params_status == "MISMATCH"
    }

    pub fn has_skip(&self) -> bool {
        self.group_status == "SKIPPED" || self.params_status == "SKIPPED"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixDto {
    pub check: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl From<AppendixReport> for AppendixDto {
    fn from(r: AppendixReport) -> Self {
        AppendixDto { check: r.check, passed: r.passed, details: r.details }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDto {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDto {
    pub fn new(name: String, g: &Graph) -> Self {
        GraphDto { name, vertices: g.labels().to_vec(), edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoDto {
    pub spec: String,
    pub input: [usize; 3],
    pub normalized: [usize; 3],
    pub connected: bool,
    pub components: usize,
    pub component: Option<String>,
    pub subdivision: Option<SpecDto>,
    pub twin_class: Option<String>,
    pub twin_classes: Vec<Vec<usize>>,
    pub co_twin_pairs: Vec<[usize; 2]>,
    pub h: Vec<usize>,
    pub h_prime: Vec<usize>,
    pub edge_transitive: Option<bool>,
    pub special_conditions: Vec<String>,
    pub group: Option<GroupDto>,
}

/// Component summary shared by `info` output.
pub fn components(spec: &circsym_core::CirculantSpec) -> (bool, usize, Option<String>) {
    let c = connectivity(spec);
    (c.connected, c.component_count, c.component_spec.map(|s| s.to_string()))
}
