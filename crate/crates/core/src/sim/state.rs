use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::hermitian_part;
use crate::error::{Result, SlsError};
use crate::gf2::SpanBasis;
use crate::pauli::{product, Pauli, PauliOperator};

/// Result of one projective Pauli measurement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    pub operator: PauliOperator,
    /// `+1` or `-1`
    pub outcome: i8,
    pub deterministic: bool,
    pub step_label: String,
}

/// Pure stabilizer state held as `n` signed, independent, commuting
/// generators. Randomness comes from a ChaCha8 stream seeded with `seed`.
#[derive(Clone, Debug)]
pub struct StabilizerState {
    n: usize,
    generators: Vec<PauliOperator>,
    seed: u64,
    rng: ChaCha8Rng,
    records: Vec<MeasurementRecord>,
    events: Vec<String>,
}

impl StabilizerState {
    /// `|0...0⟩`.
    pub fn zero(n: usize, seed: u64) -> Self {
        let gens = (0..n)
            .map(|q| PauliOperator::single(n, q, Pauli::Z))
            .collect();
        Self::from_generators_unchecked(n, gens, seed)
    }

    fn from_generators_unchecked(n: usize, generators: Vec<PauliOperator>, seed: u64) -> Self {
        StabilizerState {
            n,
            generators,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            records: Vec::new(),
            events: Vec::new(),
        }
    }

    /// State stabilized by `generators`, which must be `n` independent,
    /// pairwise commuting Hermitian operators not generating `-I`.
    pub fn from_generators(n: usize, generators: Vec<PauliOperator>, seed: u64) -> Result<Self> {
        if generators.len() != n {
            return Err(SlsError::InvalidEncoding(format!(
                "{} generators given for {n} qubits",
                generators.len()
            )));
        }
        let state = Self::from_generators_unchecked(n, generators, seed);
        state.validate()?;
        Ok(state)
    }

    /// Check independence, commutation and Hermiticity.
    pub fn validate(&self) -> Result<()> {
        let mut span = SpanBasis::new(2 * self.n, self.n);
        for (i, g) in self.generators.iter().enumerate() {
            if g.n() != self.n {
                return Err(SlsError::Dimension {
                    expected: self.n,
                    found: g.n(),
                });
            }
            if !g.is_hermitian() {
                return Err(SlsError::NonHermitian(g.to_string()));
            }
            if let Some(h) = self.generators[i + 1..]
                .iter()
                .find(|h| h.anticommutes_with(g))
            {
                return Err(SlsError::InvalidEncoding(format!(
                    "{g} and {h} anticommute"
                )));
            }
            if !span.insert(&g.symplectic()) {
                return Err(SlsError::InvalidEncoding(format!("{g} is not independent")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn records(&self) -> &[MeasurementRecord] {
        &self.records
    }

    pub fn events(&self) -> &[String] {
        &self.events
    }

    pub(crate) fn log_event(&mut self, event: String) {
        self.events.push(event);
    }

    fn check(&self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(SlsError::Dimension {
                expected: self.n,
                found: p.n(),
            });
        }
        if !p.is_hermitian() {
            return Err(SlsError::NonHermitian(p.to_string()));
        }
        Ok(())
    }

    /// `Some(±1)` when `p` has a definite value, `None` when a measurement
    /// would be random. Does not touch the state.
    pub fn expectation(&self, p: &PauliOperator) -> Result<Option<i8>> {
        self.check(p)?;
        if self.generators.iter().any(|g| g.anticommutes_with(p)) {
            return Ok(None);
        }
        Ok(Some(self.deterministic_value(p)))
    }

    /// Value of a `p` that commutes with every generator: write `p` as a
    /// product of generators and compare phases.
    fn deterministic_value(&self, p: &PauliOperator) -> i8 {
        let span = SpanBasis::from_vectors(
            2 * self.n,
            self.generators
                .iter()
                .map(|g| g.symplectic())
                .collect::<Vec<_>>()
                .iter(),
        );
        let combo = span
            .express(&p.symplectic())
            .expect("a full stabilizer group contains every commuting Pauli up to phase");
        let prod = product(self.n, combo.iter_ones().map(|i| &self.generators[i]));
        match (4 + p.phase_exp() - prod.phase_exp()) % 4 {
            0 => 1,
            2 => -1,
            _ => unreachable!("Hermitian operators differ by a real sign"),
        }
    }

    /// Projective measurement of `p`, appended to the record log.
    pub fn measure(&mut self, p: &PauliOperator, label: &str) -> Result<MeasurementRecord> {
        self.check(p)?;
        let anti: Vec<usize> = (0..self.n)
            .filter(|&i| self.generators[i].anticommutes_with(p))
            .collect();
        let record = if let Some((&k, rest)) = anti.split_first() {
            let pivot = self.generators[k].clone();
            for &i in rest {
                self.generators[i] = hermitian_part(&self.generators[i] * &pivot);
            }
            let outcome: i8 = if self.rng.random::<bool>() { 1 } else { -1 };
            self.generators[k] = if outcome == 1 {
                p.clone()
            } else {
                p.clone().negated()
            };
            MeasurementRecord {
                operator: p.clone(),
                outcome,
                deterministic: false,
                step_label: label.to_string(),
            }
        } else {
            MeasurementRecord {
                operator: p.clone(),
                outcome: self.deterministic_value(p),
                deterministic: true,
                step_label: label.to_string(),
            }
        };
        debug_assert!(self.validate().is_ok());
        self.records.push(record.clone());
        Ok(record)
    }

    /// Apply the Pauli `e` to the state.
    pub fn apply_pauli(&mut self, e: &PauliOperator) -> Result<()> {
        if e.n() != self.n {
            return Err(SlsError::Dimension {
                expected: self.n,
                found: e.n(),
            });
        }
        for g in self.generators.iter_mut() {
            if g.anticommutes_with(e) {
                *g = g.clone().negated();
            }
        }
        Ok(())
    }
}

/// The six single-qubit Pauli eigenstates, used as logical inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateLabel {
    #[serde(rename = "Z+")]
    ZPlus,
    #[serde(rename = "Z-")]
    ZMinus,
    #[serde(rename = "X+")]
    XPlus,
    #[serde(rename = "X-")]
    XMinus,
    #[serde(rename = "Y+")]
    YPlus,
    #[serde(rename = "Y-")]
    YMinus,
}

impl StateLabel {
    pub const ALL: [StateLabel; 6] = [
        StateLabel::ZPlus,
        StateLabel::ZMinus,
        StateLabel::XPlus,
        StateLabel::XMinus,
        StateLabel::YPlus,
        StateLabel::YMinus,
    ];

    pub fn axis(self) -> Pauli {
        match self {
            StateLabel::ZPlus | StateLabel::ZMinus => Pauli::Z,
            StateLabel::XPlus | StateLabel::XMinus => Pauli::X,
            StateLabel::YPlus | StateLabel::YMinus => Pauli::Y,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            StateLabel::ZPlus | StateLabel::XPlus | StateLabel::YPlus => 1,
            _ => -1,
        }
    }

    /// `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of the eigenstate.
    pub fn expectations(self) -> (i8, i8, i8) {
        let s = self.sign();
        match self.axis() {
            Pauli::X => (s, 0, 0),
            Pauli::Y => (0, s, 0),
            _ => (0, 0, s),
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign() > 0 { '+' } else { '-' };
        write!(f, "{}{}", self.axis().as_char(), sign)
    }
}

impl FromStr for StateLabel {
    type Err = SlsError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || SlsError::InvalidEncoding(format!("unknown state label {s:?}"));
        let mut chars = s.chars();
        let (Some(axis), Some(sign), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(bad());
        };
        let plus = match sign {
            '+' => true,
            '-' => false,
            _ => return Err(bad()),
        };
        Ok(match (axis.to_ascii_uppercase(), plus) {
            ('Z', true) => StateLabel::ZPlus,
            ('Z', false) => StateLabel::ZMinus,
            ('X', true) => StateLabel::XPlus,
            ('X', false) => StateLabel::XMinus,
            ('Y', true) => StateLabel::YPlus,
            ('Y', false) => StateLabel::YMinus,
            _ => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn measuring_z_on_plus_is_random_then_repeatable() {
        let mut seen = [false, false];
        for seed in 0..32 {
            let mut st = StabilizerState::from_generators(1, vec![p("X")], seed).unwrap();
            let first = st.measure(&p("Z"), "m").unwrap();
            assert!(!first.deterministic);
            seen[(first.outcome > 0) as usize] = true;
            let again = st.measure(&p("Z"), "m").unwrap();
            assert!(again.deterministic);
            assert_eq!(again.outcome, first.outcome);
        }
        assert!(seen[0] && seen[1]);
    }

    #[test]
    fn deterministic_signs_follow_generators() {
        let st = StabilizerState::from_generators(2, vec![p("-ZZ"), p("XX")], 0).unwrap();
        assert_eq!(st.expectation(&p("ZZ")).unwrap(), Some(-1));
        // (-ZZ)(XX) = -(ZX)⊗(ZX) = -(iY)⊗(iY) = YY
        assert_eq!(st.expectation(&p("YY")).unwrap(), Some(1));
        assert_eq!(st.expectation(&p("ZI")).unwrap(), None);
    }

    #[test]
    fn rejects_bad_generator_sets() {
        assert!(StabilizerState::from_generators(1, vec![p("+iZ")], 0).is_err());
        assert!(StabilizerState::from_generators(2, vec![p("ZI"), p("XI")], 0).is_err());
        assert!(StabilizerState::from_generators(2, vec![p("ZZ"), p("ZZ")], 0).is_err());
        assert!(StabilizerState::from_generators(2, vec![p("ZZ")], 0).is_err());
    }

    #[test]
    fn pauli_application_flips_anticommuting_generators() {
        let mut st = StabilizerState::zero(2, 0);
        st.apply_pauli(&p("XI")).unwrap();
        assert_eq!(st.expectation(&p("ZI")).unwrap(), Some(-1));
        assert_eq!(st.expectation(&p("IZ")).unwrap(), Some(1));
    }

    #[test]
    fn labels_round_trip() {
        for l in StateLabel::ALL {
            assert_eq!(l.to_string().parse::<StateLabel>().unwrap(), l);
        }
        assert!("Q+".parse::<StateLabel>().is_err());
        assert!("Z".parse::<StateLabel>().is_err());
    }
}
