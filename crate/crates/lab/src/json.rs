//! JSON shapes for rationals, group elements, groups and correspondences.
//!
//! Rationals are strings such as `"-3/4"`; plain JSON integers are accepted on
//! input. Elliptic points are `{"x": .., "y": ..}` and the point at infinity
//! is the string `"infinity"`. Groups are `"Ga"`, `"Gm"` or
//! `{"elliptic": {"a": .., "b": ..}}`.

use serde::{Deserialize, Serialize};
use sumprod::{Axis, Correspondence, Curve, GroupDescriptor, GroupElement, MultiPoly, Rational};

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Int(i64),
    Text(String),
}

impl RationalSpec {
    pub fn to_rational(&self) -> LabResult<Rational> {
        match self {
            RationalSpec::Int(n) => Ok(Rational::from(*n)),
            RationalSpec::Text(s) => s.parse().map_err(LabError::config),
        }
    }
}

impl From<&Rational> for RationalSpec {
    fn from(r: &Rational) -> Self {
        RationalSpec::Text(r.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Point { x: RationalSpec, y: RationalSpec },
    Value(RationalSpec),
}

impl ElementSpec {
    /// The element of `group` this spec names; membership is checked.
    pub fn to_element(&self, group: &GroupDescriptor) -> LabResult<GroupElement> {
        let element = match (self, group) {
            (ElementSpec::Value(RationalSpec::Text(s)), GroupDescriptor::Elliptic(_)) if s == "infinity" => {
                GroupElement::Infinity
            }
            (ElementSpec::Point { x, y }, GroupDescriptor::Elliptic(_)) => {
                GroupElement::affine(x.to_rational()?, y.to_rational()?)
            }
            (ElementSpec::Value(v), GroupDescriptor::Additive | GroupDescriptor::Multiplicative) => {
                return group.element(v.to_rational()?).map_err(LabError::config);
            }
            _ => return Err(LabError::Config(format!("{self:?} does not describe an element of {group:?}"))),
        };
        group.check(&element).map_err(LabError::config)?;
        Ok(element)
    }

    pub fn from_element(e: &GroupElement) -> Self {
        match e {
            GroupElement::Add(v) | GroupElement::Mul(v) => ElementSpec::Value(v.into()),
            GroupElement::Infinity => ElementSpec::Value(RationalSpec::Text("infinity".into())),
            GroupElement::Affine { x, y } => ElementSpec::Point { x: x.into(), y: y.into() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub a: RationalSpec,
    pub b: RationalSpec,
}

impl CurveSpec {
    pub fn to_curve(&self) -> LabResult<Curve> {
        Curve::new(self.a.to_rational()?, self.b.to_rational()?).map_err(LabError::config)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Elliptic { elliptic: CurveSpec },
}

impl GroupSpec {
    pub fn to_group(&self) -> LabResult<GroupDescriptor> {
        match self {
            GroupSpec::Named(n) if n == "Ga" => Ok(GroupDescriptor::Additive),
            GroupSpec::Named(n) if n == "Gm" => Ok(GroupDescriptor::Multiplicative),
            GroupSpec::Named(n) => Err(LabError::Config(format!("unknown group {n:?}; expected Ga, Gm or {{\"elliptic\": ..}}"))),
            GroupSpec::Elliptic { elliptic } => Ok(GroupDescriptor::Elliptic(elliptic.to_curve()?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisSpec {
    X,
    Y,
}

/// `source` defaults to the experiment's group; `target` to the source for
/// graphs and implicit curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CorrespondenceSpec {
    Graph {
        phi: String,
        #[serde(default)]
        source: Option<GroupSpec>,
        #[serde(default)]
        target: Option<GroupSpec>,
    },
    Coordproj {
        axis: AxisSpec,
        #[serde(default)]
        source: Option<GroupSpec>,
    },
    Squareshift {
        u: RationalSpec,
        #[serde(default)]
        source: Option<GroupSpec>,
        #[serde(default)]
        target: Option<GroupSpec>,
    },
    Implicit {
        #[serde(rename = "P")]
        p: String,
        #[serde(default)]
        source: Option<GroupSpec>,
        #[serde(default)]
        target: Option<GroupSpec>,
    },
}

impl CorrespondenceSpec {
    pub fn to_correspondence(&self, default_source: &GroupDescriptor) -> LabResult<Correspondence> {
        let resolve = |g: &Option<GroupSpec>, fallback: &GroupDescriptor| match g {
            Some(g) => g.to_group(),
            None => Ok(fallback.clone()),
        };
        let built = match self {
            CorrespondenceSpec::Graph { phi, source, target } => {
                let s = resolve(source, default_source)?;
                let t = resolve(target, &s)?;
                let phi = MultiPoly::parse(phi, Some(1)).map_err(LabError::config)?;
                Correspondence::graph(s, t, phi)
            }
            CorrespondenceSpec::Coordproj { axis, source } => {
                let s = resolve(source, default_source)?;
                let axis = match axis {
                    AxisSpec::X => Axis::X,
                    AxisSpec::Y => Axis::Y,
                };
                Correspondence::coord_proj(s, axis)
            }
            CorrespondenceSpec::Squareshift { u, source, target } => {
                let s = resolve(source, default_source)?;
                let t = resolve(target, &s)?;
                Correspondence::square_shift(s, t, u.to_rational()?)
            }
            CorrespondenceSpec::Implicit { p, source, target } => {
                let s = resolve(source, default_source)?;
                let t = resolve(target, &s)?;
                let p = MultiPoly::parse(p, Some(2)).map_err(LabError::config)?;
                Correspondence::implicit(s, t, p)
            }
        };
        built.map_err(LabError::config)
    }

    pub fn describe(&self) -> String {
        match self {
            CorrespondenceSpec::Graph { phi, .. } => format!("graph of {phi}"),
            CorrespondenceSpec::Coordproj { axis, .. } => format!("{axis:?}-projection"),
            CorrespondenceSpec::Squareshift { u, .. } => format!("square shift by {u:?}"),
            CorrespondenceSpec::Implicit { p, .. } => format!("zero set of {p}"),
        }
    }
}
