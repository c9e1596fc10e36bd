//! Named traditional and new scales.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{ScaleFunction, EARTH_RADIUS_KM, EARTH_RADIUS_MI};
use crate::scale::{Origin, ScaleSpec, ScaleSpecDoc};

const FEET_PER_MILE: f64 = 5280.0;
const KM_PER_MILE: f64 = 1.609_344;

/// A registry scale: its distance function plus the conventional range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegistryEntry {
    pub name: String,
    pub description: String,
    pub family: String,
    pub function: ScaleFunction,
    pub zoom: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub units_label: String,
    pub origin: Origin,
}

impl RegistryEntry {
    /// Builds the concrete scale for a rule of the given length.
    pub fn build(&self, length_mm: f64) -> Result<ScaleSpec> {
        ScaleSpec::builder(self.name.clone(), self.function)
            .length_mm(length_mm)
            .zoom(self.zoom)
            .range(self.x_min, self.x_max)
            .units_label(self.units_label.clone())
            .origin(self.origin)
            .build()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleRegistry {
    entries: Vec<RegistryEntry>,
}

impl Default for ScaleRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl ScaleRegistry {
    pub fn standard() -> Self {
        Self::build(EARTH_RADIUS_KM, EARTH_RADIUS_MI)
    }

    /// Standard registry with the Earth radius overridden; the imperial radius
    /// is converted from the metric one.
    pub fn with_earth_radius_km(radius_km: f64) -> Result<Self> {
        if !(radius_km.is_finite() && radius_km > 0.0) {
            return Err(Error::invalid(format!(
                "Earth radius must be positive, got {radius_km}"
            )));
        }
        Ok(Self::build(radius_km, radius_km / KM_PER_MILE))
    }

    fn build(radius_km: f64, radius_mi: f64) -> Self {
        let log10 = ScaleFunction::Log { base: 10.0 };
        let square = ScaleFunction::Power { alpha: 2.0 };
        let recip = ScaleFunction::reciprocal();
        let horizon_ft = ScaleFunction::Horizon {
            radius: radius_mi * FEET_PER_MILE,
        };
        let horizon_m = ScaleFunction::Horizon {
            radius: radius_km * 1000.0,
        };
        // Companion rulers share the unit of G1/G4: their far end is the
        // horizon distance of the companion's far end.
        let g1_max = 1000.0;
        let g4_max = 300.0;
        let g3_max = horizon_ft.evaluate_unchecked(g1_max) / FEET_PER_MILE;
        let g6_max = horizon_m.evaluate_unchecked(g4_max) / 1000.0;

        let e = |name: &str,
                 family: &str,
                 description: &str,
                 function: ScaleFunction,
                 zoom: f64,
                 range: (f64, f64),
                 units: &str| RegistryEntry {
            name: name.into(),
            description: description.into(),
            family: family.into(),
            function,
            zoom,
            x_min: range.0,
            x_max: range.1,
            units_label: units.into(),
            origin: Origin::default_for(&function),
        };
        let mut entries = vec![
            e(
                "C",
                "traditional",
                "x scale, log(x)",
                log10,
                1.0,
                (1.0, 10.0),
                "",
            ),
            e(
                "D",
                "traditional",
                "x scale, log(x)",
                log10,
                1.0,
                (1.0, 10.0),
                "",
            ),
            e(
                "B",
                "traditional",
                "x^2 scale, log(x)/2",
                log10,
                0.5,
                (1.0, 100.0),
                "",
            ),
            e(
                "K",
                "traditional",
                "x^3 scale, log(x)/3",
                log10,
                1.0 / 3.0,
                (1.0, 1000.0),
                "",
            ),
            e(
                "L",
                "traditional",
                "log(x) scale, equidistant",
                ScaleFunction::Equidistant,
                1.0,
                (0.0, 1.0),
                "",
            ),
            e(
                "LL3",
                "traditional",
                "e^x scale, log(log(x))",
                ScaleFunction::LogLog { base: E },
                1.0,
                (E, 10f64.exp()),
                "",
            ),
            e("Q1", "Q", "quadratic x^2", square, 1.0, (0.0, 7.0), ""),
            e("Q2", "Q", "quadratic x^2", square, 1.0, (0.0, 50.0), ""),
            e("R1", "R", "reciprocal 1/x", recip, 1.0, (1.0, 10.0), ""),
            e("R2", "R", "reciprocal 1/x", recip, 1.0, (0.3, 3.0), ""),
            e(
                "G1",
                "G",
                "horizon distance from height",
                horizon_ft,
                1.0,
                (0.0, g1_max),
                "feet",
            ),
            e(
                "G2",
                "G",
                "horizon distance from height",
                horizon_ft,
                1.0,
                (0.0, 50_000.0),
                "feet",
            ),
            e(
                "G3",
                "G",
                "horizon distance, equidistant companion of G1",
                ScaleFunction::Equidistant,
                1.0,
                (0.0, g3_max),
                "miles",
            ),
            e(
                "G4",
                "G",
                "horizon distance from height",
                horizon_m,
                1.0,
                (0.0, g4_max),
                "meters",
            ),
            e(
                "G5",
                "G",
                "horizon distance from height",
                horizon_m,
                1.0,
                (0.0, 15_000.0),
                "meters",
            ),
            e(
                "G6",
                "G",
                "horizon distance, equidistant companion of G4",
                ScaleFunction::Equidistant,
                1.0,
                (0.0, g6_max),
                "km",
            ),
        ];
        // R scales read against C with a shared unit: "inf" at the origin.
        for entry in entries.iter_mut().filter(|e| e.family == "R") {
            entry.origin = Origin::Natural;
        }
        ScaleRegistry { entries }
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn scale(&self, name: &str, length_mm: f64) -> Result<ScaleSpec> {
        self.get(name)
            .ok_or_else(|| Error::invalid(format!("unknown registry scale {name:?}")))?
            .build(length_mm)
    }
}

/// A scale in a request: a registry name, `{"registry": name}`, or a full
/// scale document.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScaleRef {
    Name(String),
    Registry {
        registry: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        length_mm: Option<f64>,
    },
    Inline(Box<ScaleSpecDoc>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryRef {
    registry: String,
    #[serde(default)]
    length_mm: Option<f64>,
}

impl<'de> Deserialize<'de> for ScaleRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(name) => Ok(ScaleRef::Name(name)),
            serde_json::Value::Object(ref m) if m.contains_key("registry") => {
                let r: RegistryRef = serde_json::from_value(v).map_err(D::Error::custom)?;
                Ok(ScaleRef::Registry {
                    registry: r.registry,
                    length_mm: r.length_mm,
                })
            }
            serde_json::Value::Object(_) => serde_json::from_value(v)
                .map(|doc| ScaleRef::Inline(Box::new(doc)))
                .map_err(|e| D::Error::custom(format!("scale: {e}"))),
            other => Err(D::Error::custom(format!(
                "scale: expected a registry name or a scale object, got {other}"
            ))),
        }
    }
}

impl ScaleRef {
    /// `length_mm` applies when the reference does not fix a length itself.
    pub fn resolve(&self, registry: &ScaleRegistry, length_mm: f64) -> Result<ScaleSpec> {
        match self {
            ScaleRef::Name(name) => registry.scale(name, length_mm),
            ScaleRef::Registry {
                registry: name,
                length_mm: own,
            } => registry.scale(name, own.unwrap_or(length_mm)),
            ScaleRef::Inline(doc) => doc.build_with_length(Some(length_mm)),
        }
    }
}
