//! Reading input files and resolving the files they refer to.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use fuzzylie::formats::{self, AmbientSource};
use fuzzylie::groups::{FiniteAction, FiniteGroup};
use fuzzylie::lie::{MembershipClassifier, SampleSet, StructureConstants};
use fuzzylie::topology::{generate, FuzzyTopology, GradeLattice, DEFAULT_RESOLUTION};
use fuzzylie::{Carrier, FuzzySet};

use crate::error::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Runs a parser over a file, attaching the path to any error.
fn parse<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, fuzzylie::Error>) -> Result<T, CliError> {
    let text = read(path)?;
    f(&text).map_err(|e| CliError::in_file(path, e))
}

/// A path named inside `file`, taken relative to that file's directory.
pub fn resolve(file: &Path, reference: &str) -> PathBuf {
    let reference = Path::new(reference);
    if reference.is_absolute() {
        return reference.to_path_buf();
    }
    file.parent().unwrap_or(Path::new("")).join(reference)
}

pub fn group(path: &Path) -> Result<FiniteGroup, CliError> {
    parse(path, formats::parse_group)
}

pub fn fuzzy_set(path: &Path) -> Result<FuzzySet, CliError> {
    parse(path, formats::parse_fuzzy_set)
}

pub fn fuzzy_set_on(path: &Path, carrier: &Arc<Carrier>) -> Result<FuzzySet, CliError> {
    parse(path, |t| formats::parse_fuzzy_set_on(t, carrier))
}

pub fn map_spec(path: &Path) -> Result<formats::MapSpec, CliError> {
    parse(path, formats::parse_map)
}

/// Crisp map indices for a map file between two known carriers.
pub fn map_indices(path: &Path, spec: &formats::MapSpec, source: &Carrier, target: &Carrier) -> Result<Vec<usize>, CliError> {
    formats::map_indices(spec, source, target).map_err(|e| CliError::in_file(path, e))
}

pub fn action(path: &Path) -> Result<FiniteAction, CliError> {
    let spec = parse(path, formats::parse_action)?;
    let group = self::group(&resolve(path, &spec.group))?;
    let space = match &spec.space {
        Some(labels) => Arc::new(Carrier::new(labels.iter().cloned()).map_err(|e| CliError::in_file(path, e))?),
        None => group.carrier().clone(),
    };
    let ambient = match &spec.ambient {
        Some(reference) => fuzzy_set_on(&resolve(path, reference), &space)?,
        None => FuzzySet::ones(space),
    };
    formats::build_action(&spec, group, ambient).map_err(|e| CliError::in_file(path, e))
}

pub fn relation(path: &Path, space: &Arc<Carrier>) -> Result<fuzzylie::groups::EquivalenceRelation, CliError> {
    parse(path, |t| formats::parse_relation(t, space))
}

/// A topology file with its ambient set and generators loaded.
pub struct TopologyInput {
    pub ambient: FuzzySet,
    pub generators: Vec<FuzzySet>,
    pub lattice: GradeLattice,
    path: PathBuf,
}

impl TopologyInput {
    /// Reads the file. `--lattice-q` overrides the file's `q`; `carrier`, when
    /// given, fixes the element order (it must hold the same labels).
    pub fn load(path: &Path, lattice_q: Option<u64>, carrier: Option<&Arc<Carrier>>) -> Result<Self, CliError> {
        let spec = parse(path, formats::parse_topology)?;
        let in_file = |e| CliError::in_file(path, e);
        let ambient = match &spec.ambient {
            AmbientSource::File(reference) => fuzzy_set(&resolve(path, reference))?,
            AmbientSource::Elements(labels) => {
                FuzzySet::ones(Arc::new(Carrier::new(labels.iter().cloned()).map_err(in_file)?))
            }
        };
        let ambient = match carrier {
            Some(c) => ambient.reindexed(c.clone()).map_err(in_file)?,
            None => ambient,
        };
        let generators = formats::topology_generators(&spec, ambient.carrier()).map_err(in_file)?;
        let q = lattice_q.or(spec.q).unwrap_or(DEFAULT_RESOLUTION);
        let lattice = GradeLattice::new(q).map_err(in_file)?;
        Ok(TopologyInput { ambient, generators, lattice, path: path.to_path_buf() })
    }

    /// The blocks taken literally as the family of opens.
    pub fn literal(&self) -> Result<FuzzyTopology, CliError> {
        FuzzyTopology::from_opens(self.ambient.clone(), self.generators.clone(), self.lattice)
            .map_err(|e| CliError::in_file(&self.path, e))
    }

    /// The topology generated by the blocks.
    pub fn generated(&self, cap: usize) -> Result<FuzzyTopology, CliError> {
        generate(&self.ambient, &self.generators, self.lattice, cap).map_err(|e| CliError::in_file(&self.path, e))
    }
}

pub fn structure_constants(path: &Path) -> Result<StructureConstants, CliError> {
    parse(path, formats::parse_structure_constants)
}

pub fn classifier(path: &Path, dim: usize) -> Result<MembershipClassifier, CliError> {
    parse(path, |t| formats::parse_classifier(t, dim))
}

pub fn samples(path: &Path, dim: usize) -> Result<SampleSet, CliError> {
    parse(path, |t| formats::parse_samples(t, dim))
}

pub fn chart_table(path: &Path) -> Result<Vec<fuzzylie::manifold::TabulatedChart>, CliError> {
    parse(path, formats::parse_chart_table)
}
