#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_seshadri::cli::Manifest;
use toric_seshadri::{BottNumbers, EquivariantBundle, Fan};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every fixture that describes a valid bundle, twisted as its manifest
/// says, paired with the file stem.
pub fn fixture_bundles() -> Vec<(String, EquivariantBundle)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let Ok(m) = Manifest::parse(&std::fs::read_to_string(&p).unwrap()) else { continue };
        let Ok(fan) = m.fan() else { continue };
        let fan = Arc::new(fan);
        let Ok(Ok(b)) = m.bundle(fan.clone()) else { continue };
        let b = match m.twist(&fan).unwrap() {
            Some(d) => b.twisted(&d).unwrap(),
            None => b,
        };
        out.push((p.file_stem().unwrap().to_string_lossy().into_owned(), b));
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `P^2` or a Hirzebruch surface with `c12` in `1..=3`.
pub fn random_surface(rng: &mut ChaCha8Rng) -> Arc<Fan> {
    let k = rng.gen_range(0..4);
    let fan = if k == 0 {
        Fan::projective_space(2).unwrap()
    } else {
        Fan::bott_tower(BottNumbers::from_rows(2, &[k]).unwrap()).unwrap()
    };
    Arc::new(fan)
}

/// A tower of height 2 or 3 with Bott numbers in `1..=4`.
pub fn random_tower(rng: &mut ChaCha8Rng) -> Fan {
    let n = rng.gen_range(2..=3);
    let cs: Vec<i64> = (0..n * (n - 1) / 2).map(|_| rng.gen_range(1..=4)).collect();
    Fan::bott_tower(BottNumbers::from_rows(n, &cs).unwrap()).unwrap()
}
