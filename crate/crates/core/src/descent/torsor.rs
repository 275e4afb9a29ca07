//! Torsor data for products of `alpha_{p^N}` and its file format.

use serde::{Deserialize, Serialize};

use super::certificate::FieldRecord;
use crate::base_fields::{same_field, Field, Place, RationalFunction};
use crate::error::{Error, Result};
use crate::text::{parse_place, parse_rational};

/// A factor `(alpha_{p^N})^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub r: usize,
    #[serde(rename = "N")]
    pub n: u32,
}

/// A commutative elementary unipotent group `prod (alpha_{p^N})^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentPresentation {
    pub components: Vec<Component>,
}

impl UnipotentPresentation {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() || components.iter().any(|c| c.r == 0 || c.n == 0) {
            return Err(Error::InvalidInput("components need r >= 1 and N >= 1".into()));
        }
        Ok(UnipotentPresentation { components })
    }

    /// `n_0`, the largest `N`.
    pub fn n0(&self) -> u32 {
        self.components.iter().map(|c| c.n).max().unwrap_or(0)
    }
}

/// Classes in `(K / K^{p^N})^r` for each component, with the boundary places.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsorData {
    pub field: Field,
    pub presentation: UnipotentPresentation,
    pub cocycles: Vec<Vec<RationalFunction>>,
    pub places: Vec<Place>,
}

impl TorsorData {
    pub fn new(
        field: &Field,
        presentation: UnipotentPresentation,
        cocycles: Vec<Vec<RationalFunction>>,
        places: Vec<Place>,
    ) -> Result<Self> {
        if cocycles.len() != presentation.components.len()
            || cocycles.iter().zip(&presentation.components).any(|(c, comp)| c.len() != comp.r)
        {
            return Err(Error::InvalidInput("cocycle sizes do not match the presentation".into()));
        }
        if cocycles.iter().flatten().any(|a| !same_field(a.field(), field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(TorsorData {
            field: field.clone(),
            presentation,
            cocycles,
            places,
        })
    }

    /// A single class of `alpha_{p^N}`.
    pub fn single(a: &RationalFunction, n: u32, places: Vec<Place>) -> Result<Self> {
        let pres = UnipotentPresentation::new(vec![Component { r: 1, n }])?;
        TorsorData::new(a.field(), pres, vec![vec![a.clone()]], places)
    }

    /// Every cocycle entry with the exponent of its component.
    pub fn entries(&self) -> Vec<(RationalFunction, u32)> {
        self.cocycles
            .iter()
            .zip(&self.presentation.components)
            .flat_map(|(cs, comp)| cs.iter().map(move |a| (a.clone(), comp.n)))
            .collect()
    }

    pub fn to_file(&self) -> TorsorFile {
        TorsorFile {
            base_field: FieldRecord::of(&self.field),
            components: self
                .presentation
                .components
                .iter()
                .zip(&self.cocycles)
                .map(|(c, cs)| ComponentRecord {
                    r: c.r,
                    n: c.n,
                    cocycles: cs.iter().map(|a| a.to_string()).collect(),
                })
                .collect(),
            places: self.places.iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub r: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub cocycles: Vec<String>,
}

/// Serialized [`TorsorData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsorFile {
    pub base_field: FieldRecord,
    pub components: Vec<ComponentRecord>,
    #[serde(default)]
    pub places: Vec<String>,
}

impl TorsorFile {
    pub fn to_data(&self) -> Result<TorsorData> {
        let field = self.base_field.to_field()?;
        let pres = UnipotentPresentation::new(
            self.components.iter().map(|c| Component { r: c.r, n: c.n }).collect(),
        )?;
        let cocycles = self
            .components
            .iter()
            .map(|c| c.cocycles.iter().map(|s| parse_rational(&field, s)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let places = self
            .places
            .iter()
            .map(|s| parse_place(&field, s))
            .collect::<Result<Vec<_>>>()?;
        TorsorData::new(&field, pres, cocycles, places)
    }
}
