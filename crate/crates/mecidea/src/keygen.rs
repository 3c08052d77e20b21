//! Deterministic 128-bit session-key derivation from a password, driven by
//! a small genetic algorithm.
//!
//! The pipeline runs in fixed stages. A linear congruential generator seeds
//! a population of fixed-width bit strings. Each generation pairs the
//! chromosomes (top-down on even generation numbers, bottom-up on odd),
//! applies single-point crossover and a one-bit mutation at the same locus,
//! and appends the results to a growing genetic array. Every accumulated
//! value is reduced to its decimal digital root, giving one digit per
//! chromosome. Those digits are added to the password bytes, and the first
//! eight mixed bytes are widened nibble-by-nibble into the final 128-bit
//! key. Every stage is a pure function of its inputs, so equal parameters
//! always derive equal keys on both sides of a connection.

use crate::idea::{Key128, KEY_LEN};
use thiserror::Error;

/// Default population size per generation.
pub const DEFAULT_POPULATION_SIZE: usize = 10;
/// Default chromosome width in bits.
pub const DEFAULT_WIDTH: u32 = 128;
/// Default number of generations accumulated into the genetic array.
pub const DEFAULT_GENERATIONS: u32 = 10;
/// Shortest accepted password, in bytes.
pub const MIN_PASSWORD_LEN: usize = 8;

/// Default multiplier/increment/modulus (the common 32-bit parameter set).
pub const DEFAULT_LCG_MULTIPLIER: u64 = 1_664_525;
pub const DEFAULT_LCG_INCREMENT: u64 = 1_013_904_223;
pub const DEFAULT_LCG_MODULUS: u64 = 1 << 32;

/// All evolved chromosomes in generation order, as plain integers.
pub type GeneticArray = Vec<u128>;
/// Digital roots of a genetic array, one decimal digit per entry.
pub type CodedArray = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KeygenError {
    #[error("lcg modulus must be positive")]
    ZeroModulus,
    #[error("lcg {0} must be less than the modulus")]
    ParamNotReduced(&'static str),
    #[error("chromosome width must be between 1 and 128, got {0}")]
    InvalidWidth(u32),
    #[error("value does not fit in {width} bits")]
    ValueTooWide { width: u32 },
    #[error("locus {locus} is out of range for width {width}")]
    LocusOutOfRange { locus: u32, width: u32 },
    #[error("chromosome widths differ: {0} vs {1}")]
    WidthMismatch(u32, u32),
    #[error("population must not be empty")]
    EmptyPopulation,
    #[error("pairing needs at least two chromosomes, got {0}")]
    DegeneratePopulation(usize),
    #[error("evolution needs at least one generation")]
    ZeroGenerations,
    #[error("password must be at least 8 bytes, got {0}")]
    PasswordTooShort(usize),
    #[error("password byte at index {0} is not printable ascii")]
    PasswordNotPrintable(usize),
    #[error("coded array must not be empty")]
    EmptyCodedArray,
    #[error("coded array entry {0} is not a decimal digit")]
    NotADigit(u8),
}

/// Parameters of the linear congruential generator `x -> (a*x + c) mod m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcgParams {
    pub multiplier: u64,
    pub increment: u64,
    pub modulus: u64,
    pub seed: u64,
}

impl LcgParams {
    pub fn new(multiplier: u64, increment: u64, modulus: u64, seed: u64) -> Result<Self, KeygenError> {
        if modulus == 0 {
            return Err(KeygenError::ZeroModulus);
        }
        if multiplier >= modulus {
            return Err(KeygenError::ParamNotReduced("multiplier"));
        }
        if increment >= modulus {
            return Err(KeygenError::ParamNotReduced("increment"));
        }
        Ok(Self {
            multiplier,
            increment,
            modulus,
            seed,
        })
    }

    /// The default parameter set with a caller-chosen seed.
    pub fn default_with_seed(seed: u64) -> Self {
        Self {
            multiplier: DEFAULT_LCG_MULTIPLIER,
            increment: DEFAULT_LCG_INCREMENT,
            modulus: DEFAULT_LCG_MODULUS,
            seed,
        }
    }
}

/// Single LCG step.
pub fn lcg_next(x: u64, params: &LcgParams) -> u64 {
    // Widened so a*x cannot overflow before the reduction.
    let wide = u128::from(params.multiplier) * u128::from(x) + u128::from(params.increment);
    (wide % u128::from(params.modulus)) as u64
}

/// A running LCG stream. The first value drawn is the seed itself
/// (reduced mod m), then each successor.
#[derive(Debug, Clone)]
pub struct Lcg {
    current: u64,
    params: LcgParams,
}

impl Lcg {
    pub fn new(params: LcgParams) -> Self {
        Self {
            current: params.seed % params.modulus,
            params,
        }
    }

    pub fn next_value(&mut self) -> u64 {
        let value = self.current;
        self.current = lcg_next(value, &self.params);
        value
    }
}

/// A fixed-width bit string. Loci are 1-based counting from the most
/// significant bit, so locus 1 is the leftmost bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chromosome {
    bits: u128,
    width: u32,
}

impl Chromosome {
    pub fn new(value: u128, width: u32) -> Result<Self, KeygenError> {
        if width == 0 || width > 128 {
            return Err(KeygenError::InvalidWidth(width));
        }
        if value & !width_mask(width) != 0 {
            return Err(KeygenError::ValueTooWide { width });
        }
        Ok(Self { bits: value, width })
    }

    pub fn value(&self) -> u128 {
        self.bits
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }
}

fn width_mask(width: u32) -> u128 {
    if width == 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

/// One generation of chromosomes. Generation numbers are 1-based; the
/// seeded population is generation 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Population {
    chromosomes: Vec<Chromosome>,
    generation_number: u32,
}

impl Population {
    pub fn new(chromosomes: Vec<Chromosome>, generation_number: u32) -> Result<Self, KeygenError> {
        let width = match chromosomes.first() {
            Some(c) => c.width(),
            None => return Err(KeygenError::EmptyPopulation),
        };
        for c in &chromosomes {
            if c.width() != width {
                return Err(KeygenError::WidthMismatch(width, c.width()));
            }
        }
        Ok(Self {
            chromosomes,
            generation_number,
        })
    }

    /// Generation 1 built from plain integers, all at the given width.
    pub fn from_values(values: &[u128], width: u32) -> Result<Self, KeygenError> {
        let chromosomes = values
            .iter()
            .map(|&v| Chromosome::new(v, width))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(chromosomes, 1)
    }

    pub fn chromosomes(&self) -> &[Chromosome] {
        &self.chromosomes
    }

    pub fn len(&self) -> usize {
        self.chromosomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chromosomes.is_empty()
    }

    pub fn width(&self) -> u32 {
        self.chromosomes[0].width()
    }

    pub fn generation_number(&self) -> u32 {
        self.generation_number
    }
}

/// Seeds generation 1. Each chromosome concatenates the low 16 bits of
/// consecutive LCG outputs, most significant chunk first, then truncates
/// to the requested width by dropping low-order bits.
pub fn seed_population(params: LcgParams, n: usize, width: u32) -> Result<Population, KeygenError> {
    seed_from_stream(&mut Lcg::new(params), n, width)
}

fn seed_from_stream(lcg: &mut Lcg, n: usize, width: u32) -> Result<Population, KeygenError> {
    if width == 0 || width > 128 {
        return Err(KeygenError::InvalidWidth(width));
    }
    if n == 0 {
        return Err(KeygenError::EmptyPopulation);
    }
    let chunks = width.div_ceil(16);
    let mut chromosomes = Vec::with_capacity(n);
    for _ in 0..n {
        let mut value: u128 = 0;
        for _ in 0..chunks {
            value = (value << 16) | u128::from(lcg.next_value() as u16);
        }
        value >>= 16 * chunks - width;
        chromosomes.push(Chromosome::new(value, width)?);
    }
    Population::new(chromosomes, 1)
}

/// Index pairs for the crossover step producing the given generation.
/// Even generation numbers pair top-down as (0,1),(2,3),...; odd ones pair
/// bottom-up as (n-1,n-2),(n-3,n-4),.... With odd n one chromosome is left
/// unpaired and passes through unchanged.
pub fn pair_indices(generation_number: u32, n: usize) -> Result<Vec<(usize, usize)>, KeygenError> {
    if n < 2 {
        return Err(KeygenError::DegeneratePopulation(n));
    }
    let pairs = if generation_number.is_multiple_of(2) {
        (0..n - 1).step_by(2).map(|i| (i, i + 1)).collect()
    } else {
        (1..n).rev().step_by(2).map(|i| (i, i - 1)).collect()
    };
    Ok(pairs)
}

/// Single-point crossover. The first child takes loci 1..=locus from the
/// first parent and the tail from the second; the second child is the
/// mirror image.
pub fn crossover(
    p1: &Chromosome,
    p2: &Chromosome,
    locus: u32,
) -> Result<(Chromosome, Chromosome), KeygenError> {
    if p1.width() != p2.width() {
        return Err(KeygenError::WidthMismatch(p1.width(), p2.width()));
    }
    let width = p1.width();
    if locus == 0 || locus >= width {
        return Err(KeygenError::LocusOutOfRange { locus, width });
    }
    let tail_mask = width_mask(width - locus);
    let head_mask = width_mask(width) & !tail_mask;
    let child1 = (p1.bits & head_mask) | (p2.bits & tail_mask);
    let child2 = (p2.bits & head_mask) | (p1.bits & tail_mask);
    Ok((
        Chromosome { bits: child1, width },
        Chromosome { bits: child2, width },
    ))
}

/// Flips the bit at the locus.
pub fn mutate(c: &Chromosome, locus: u32) -> Result<Chromosome, KeygenError> {
    if locus == 0 || locus > c.width() {
        return Err(KeygenError::LocusOutOfRange {
            locus,
            width: c.width(),
        });
    }
    Ok(Chromosome {
        bits: c.bits ^ (1u128 << (c.width() - locus)),
        width: c.width(),
    })
}

/// Bit-balance score in [0, 1]: 1.0 for an even ones/zeros split, 0.0 for
/// a constant chromosome. Used only when selection is enabled.
pub fn fitness(c: &Chromosome) -> f64 {
    let balance = f64::from(c.ones()) / f64::from(c.width());
    1.0 - (balance - 0.5).abs() * 2.0
}

/// How the crossover/mutation locus is chosen for each generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusPolicy {
    /// The same locus every generation.
    Fixed(u32),
    /// One locus per generation drawn from the LCG stream, keeping the
    /// whole pipeline reproducible from the seed.
    LcgDriven,
}

/// Everything that determines a derivation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaConfig {
    pub lcg: LcgParams,
    pub population_size: usize,
    pub width: u32,
    pub generations: u32,
    pub locus: LocusPolicy,
    pub selection: bool,
}

impl GaConfig {
    pub fn new(lcg: LcgParams) -> Self {
        Self {
            lcg,
            population_size: DEFAULT_POPULATION_SIZE,
            width: DEFAULT_WIDTH,
            generations: DEFAULT_GENERATIONS,
            locus: LocusPolicy::LcgDriven,
            selection: false,
        }
    }
}

/// Runs the full evolution: seeds generation 1 from the LCG and accumulates
/// every generation into the genetic array, so the result holds exactly
/// `generations * population_size` values.
pub fn evolve(config: &GaConfig) -> Result<GeneticArray, KeygenError> {
    let mut lcg = Lcg::new(config.lcg);
    let initial = seed_from_stream(&mut lcg, config.population_size, config.width)?;
    evolve_from(initial, &mut lcg, config.generations, config.locus, config.selection)
}

/// Evolution from a caller-supplied generation 1. The LCG stream is used
/// only for locus draws under [`LocusPolicy::LcgDriven`].
pub fn evolve_from(
    initial: Population,
    lcg: &mut Lcg,
    generations: u32,
    locus: LocusPolicy,
    selection: bool,
) -> Result<GeneticArray, KeygenError> {
    if generations == 0 {
        return Err(KeygenError::ZeroGenerations);
    }
    let mut array: GeneticArray = initial.chromosomes().iter().map(|c| c.value()).collect();
    let mut current = initial;
    for generation_number in 2..=generations {
        current = next_generation(&current, generation_number, lcg, locus, selection)?;
        array.extend(current.chromosomes().iter().map(|c| c.value()));
    }
    Ok(array)
}

fn next_generation(
    parents: &Population,
    generation_number: u32,
    lcg: &mut Lcg,
    locus_policy: LocusPolicy,
    selection: bool,
) -> Result<Population, KeygenError> {
    let width = parents.width();
    let pairs = pair_indices(generation_number, parents.len())?;
    // One locus per generation; both crossover children mutate at the
    // same position.
    let locus = match locus_policy {
        LocusPolicy::Fixed(l) => l,
        LocusPolicy::LcgDriven => {
            if width < 2 {
                return Err(KeygenError::InvalidWidth(width));
            }
            1 + (lcg.next_value() % u64::from(width - 1)) as u32
        }
    };

    // Unpaired chromosomes (odd population size) carry over unchanged.
    let mut children = parents.chromosomes().to_vec();
    for &(i, j) in &pairs {
        let (a, b) = crossover(&parents.chromosomes()[i], &parents.chromosomes()[j], locus)?;
        children[i] = mutate(&a, locus)?;
        children[j] = mutate(&b, locus)?;
    }

    let next = if selection {
        // Keep the best N of parents and children together. Children are
        // listed first so ties favor the new generation.
        let mut pool: Vec<Chromosome> = children
            .iter()
            .chain(parents.chromosomes())
            .copied()
            .collect();
        pool.sort_by(|a, b| fitness(b).partial_cmp(&fitness(a)).expect("scores are finite"));
        pool.truncate(parents.len());
        pool
    } else {
        children
    };
    Population::new(next, generation_number)
}

/// Iterated decimal digit sum, reduced to a single digit. Zero stays zero.
pub fn digital_root(mut value: u128) -> u8 {
    while value >= 10 {
        let mut sum: u128 = 0;
        while value > 0 {
            sum += value % 10;
            value /= 10;
        }
        value = sum;
    }
    value as u8
}

/// Element-wise digital root of a genetic array.
pub fn coded_array(genetic: &[u128]) -> CodedArray {
    genetic.iter().map(|&v| digital_root(v)).collect()
}

/// Adds coded digits to the password bytes one-to-one, cycling through the
/// coded array if the password is longer. Password bytes must be printable
/// ASCII (32..=126), so adding a digit can never overflow a byte.
pub fn mix_password(password: &[u8], coded: &[u8]) -> Result<Vec<u8>, KeygenError> {
    if password.len() < MIN_PASSWORD_LEN {
        return Err(KeygenError::PasswordTooShort(password.len()));
    }
    if let Some(index) = password.iter().position(|b| !(0x20..=0x7e).contains(b)) {
        return Err(KeygenError::PasswordNotPrintable(index));
    }
    if coded.is_empty() {
        return Err(KeygenError::EmptyCodedArray);
    }
    if let Some(&bad) = coded.iter().find(|&&d| d > 9) {
        return Err(KeygenError::NotADigit(bad));
    }
    Ok(password
        .iter()
        .enumerate()
        .map(|(i, &b)| b + coded[i % coded.len()])
        .collect())
}

/// Widens 8 bytes to a 128-bit key. Each nibble (high first) becomes one
/// output byte: its parity bit, then its 0-based rank within the even or
/// odd number series in three bits, then four zero padding bits. The
/// original nibble is always recoverable as 2*rank + parity.
pub fn expand_64_to_128(mixed: &[u8; 8]) -> Key128 {
    let mut out = [0u8; KEY_LEN];
    for (i, &byte) in mixed.iter().enumerate() {
        out[2 * i] = encode_nibble(byte >> 4);
        out[2 * i + 1] = encode_nibble(byte & 0x0f);
    }
    Key128::new(out)
}

fn encode_nibble(nibble: u8) -> u8 {
    let code = nibble & 1;
    let rank = nibble >> 1;
    (code << 7) | (rank << 4)
}

/// The tail of the pipeline: mix, take the first eight bytes, widen.
pub fn session_key_from_coded(password: &[u8], coded: &[u8]) -> Result<Key128, KeygenError> {
    let mixed = mix_password(password, coded)?;
    let first: [u8; 8] = mixed[..MIN_PASSWORD_LEN]
        .try_into()
        .expect("password has at least eight bytes");
    Ok(expand_64_to_128(&first))
}

/// Full derivation: evolve, code, mix with the password, widen. Equal
/// inputs always produce equal keys.
pub fn generate_session_key(password: &[u8], config: &GaConfig) -> Result<Key128, KeygenError> {
    let genetic = evolve(config)?;
    let coded = coded_array(&genetic);
    session_key_from_coded(password, &coded)
}
