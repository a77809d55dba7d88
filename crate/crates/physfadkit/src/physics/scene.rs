use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{checked_inverse_polarizability, Dipole, PhysicalConstants, PhysicsError};
use crate::numerics::{BlockIndexMap, Group};

fn default_off_detuning() -> f64 {
    3.0
}

/// Ordered dipole collection: transmitters, receivers, environment, RIS.
///
/// Construct through [`Scene::new`] or the JSON loaders; both validate the
/// parameter ranges, the energy floor at f₀ and the minimum separation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    #[serde(default)]
    pub constants: PhysicalConstants,
    #[serde(default)]
    pub transmitters: Vec<Dipole>,
    #[serde(default)]
    pub receivers: Vec<Dipole>,
    #[serde(default)]
    pub environment: Vec<Dipole>,
    #[serde(default)]
    pub ris: Vec<Dipole>,
    /// OFF-state resonance of RIS elements, in units of f₀.
    #[serde(default = "default_off_detuning")]
    pub ris_off_detuning: f64,
}

impl Scene {
    pub fn new(
        constants: PhysicalConstants,
        transmitters: Vec<Dipole>,
        receivers: Vec<Dipole>,
        environment: Vec<Dipole>,
        ris: Vec<Dipole>,
    ) -> Result<Self, PhysicsError> {
        let s = Self {
            constants,
            transmitters,
            receivers,
            environment,
            ris,
            ris_off_detuning: default_off_detuning(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Free space defaults (c = ε = δ = f₀ = 1) without environment.
    pub fn free_space(transmitters: Vec<Dipole>, receivers: Vec<Dipole>, ris: Vec<Dipole>) -> Result<Self, PhysicsError> {
        Self::new(PhysicalConstants::default(), transmitters, receivers, Vec::new(), ris)
    }

    pub fn from_json_str(s: &str) -> Result<Self, PhysicsError> {
        let scene: Scene = serde_json::from_str(s).map_err(|e| PhysicsError::Schema(e.to_string()))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self, PhysicsError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| PhysicsError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serialization cannot fail")
    }

    pub fn block_map(&self) -> BlockIndexMap {
        BlockIndexMap::new(
            self.transmitters.len(),
            self.receivers.len(),
            self.environment.len(),
            self.ris.len(),
        )
    }

    pub fn group(&self, g: Group) -> &[Dipole] {
        match g {
            Group::T => &self.transmitters,
            Group::R => &self.receivers,
            Group::E => &self.environment,
            Group::S => &self.ris,
        }
    }

    /// All dipoles in storage order T, R, E, S.
    pub fn dipoles(&self) -> impl Iterator<Item = &Dipole> + '_ {
        self.transmitters
            .iter()
            .chain(&self.receivers)
            .chain(&self.environment)
            .chain(&self.ris)
    }

    pub fn len(&self) -> usize {
        self.block_map().total()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_ris(&self) -> usize {
        self.ris.len()
    }

    /// Resonance frequencies of the ON and OFF RIS states.
    pub fn ris_states(&self) -> (f64, f64) {
        (self.constants.f0, self.ris_off_detuning * self.constants.f0)
    }

    /// Same scene with the environment removed (matched free-space reference).
    pub fn without_environment(&self) -> Scene {
        Scene {
            environment: Vec::new(),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), PhysicsError> {
        if !self.constants.is_valid() {
            return Err(PhysicsError::InvalidParameter {
                index: None,
                field: "constants".into(),
                reason: "all constants must be finite and > 0".into(),
            });
        }
        if !(self.ris_off_detuning.is_finite() && self.ris_off_detuning > 0.0) {
            return Err(PhysicsError::InvalidParameter {
                index: None,
                field: "ris_off_detuning".into(),
                reason: "must be finite and > 0".into(),
            });
        }
        let f0 = self.constants.f0;
        let all: Vec<&Dipole> = self.dipoles().collect();
        for (i, d) in all.iter().enumerate() {
            d.params_valid().map_err(|field| PhysicsError::InvalidParameter {
                index: Some(i),
                field: field.into(),
                reason: "out of range".into(),
            })?;
            checked_inverse_polarizability(d, f0, &self.constants).map_err(|e| e.at_index(i))?;
        }
        // RIS elements must stay admissible in both states
        let (_, f_off) = self.ris_states();
        let off = self.block_map().offset(Group::S);
        for (i, d) in self.ris.iter().enumerate() {
            let d_off = Dipole { f_res: f_off, ..*d };
            checked_inverse_polarizability(&d_off, f0, &self.constants).map_err(|e| e.at_index(off + i))?;
        }
        let dmin = self.constants.d_min();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let dist = all[i].distance(all[j]);
                if dist < dmin {
                    return Err(PhysicsError::CoincidentPoints {
                        i: Some(i),
                        j: Some(j),
                        distance: dist,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Binary RIS state vector; bit 1 = resonant at f₀ (ON), bit 0 = detuned (OFF).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RisConfiguration {
    bits: Vec<bool>,
}

impl RisConfiguration {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn all_on(n: usize) -> Self {
        Self { bits: vec![true; n] }
    }

    pub fn all_off(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    /// Parse a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self, PhysicsError> {
        s.trim()
            .chars()
            .map(|ch| match ch {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(PhysicsError::Schema(format!("config bits: unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_bits)
    }

    /// Uniformly random configuration.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        Self {
            bits: (0..n).map(|_| rng.gen::<bool>()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Labels c_i = 2·bit − 1 ∈ {−1, +1}.
    pub fn labels(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| if b { 1.0 } else { -1.0 }).collect()
    }

    pub fn bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut bits = self.bits.clone();
        bits[i] = !bits[i];
        Self { bits }
    }
}

/// Scene copy with each RIS element set to its ON or OFF resonance.
pub fn apply_ris_config(s: &Scene, c: &RisConfiguration) -> Result<Scene, PhysicsError> {
    if c.len() != s.ris.len() {
        return Err(PhysicsError::LengthMismatch {
            expected: s.ris.len(),
            found: c.len(),
        });
    }
    let (f_on, f_off) = s.ris_states();
    let mut out = s.clone();
    for (d, &b) in out.ris.iter_mut().zip(c.bits()) {
        d.f_res = if b { f_on } else { f_off };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ris_scene() -> Scene {
        Scene::free_space(
            vec![Dipole::antenna(0.0, 8.0)],
            vec![Dipole::antenna(3.0, 7.0)],
            (0..3).map(|i| Dipole::antenna(i as f64 * 0.5, 0.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn config_states() {
        let s = ris_scene();
        let on = apply_ris_config(&s, &RisConfiguration::all_on(3)).unwrap();
        assert!(on.ris.iter().all(|d| d.f_res == 1.0));
        let off = apply_ris_config(&s, &RisConfiguration::all_off(3)).unwrap();
        assert!(off.ris.iter().all(|d| d.f_res == 3.0));
        let one = apply_ris_config(&s, &RisConfiguration::all_on(3).flipped(1)).unwrap();
        let diffs = on.dipoles().zip(one.dipoles()).filter(|(a, b)| a != b).count();
        assert_eq!(diffs, 1);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            apply_ris_config(&ris_scene(), &RisConfiguration::all_on(2)),
            Err(PhysicsError::LengthMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn labels_and_bits() {
        let c = RisConfiguration::parse("1001").unwrap();
        assert_eq!(c.labels(), vec![1.0, -1.0, -1.0, 1.0]);
        assert_eq!(c.bitstring(), "1001");
        assert!(RisConfiguration::parse("10x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = ris_scene();
        let back = Scene::from_json_str(&s.to_json_string()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_close_pairs_and_bad_energy() {
        let close = Scene::free_space(vec![Dipole::antenna(0.0, 0.0)], vec![Dipole::antenna(0.05, 0.0)], vec![]);
        assert!(matches!(close, Err(PhysicsError::CoincidentPoints { .. })));
        let lossy = Dipole::antenna(0.0, 0.0).with_losses(0.0, 1.0);
        let bad = Scene::free_space(vec![lossy], vec![], vec![]);
        assert!(matches!(bad, Err(PhysicsError::EnergyConservationViolation { index: Some(0), .. })));
    }

    #[test]
    fn json_defaults_and_unknown_fields() {
        let s = Scene::from_json_str(r#"{"transmitters":[{"x":0,"y":0,"f_res":1,"chi":1}],"receivers":[{"x":2,"y":0,"f_res":1,"chi":1}]}"#).unwrap();
        assert_eq!(s.ris_off_detuning, 3.0);
        assert_eq!(s.transmitters[0].gamma_l, 0.0);
        assert!(Scene::from_json_str(r#"{"transmiters":[]}"#).is_err());
    }
}
