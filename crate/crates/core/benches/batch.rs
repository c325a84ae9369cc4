//! Sequential against rayon execution for the two batch entry points.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_seshadri::klyachko::restriction_profile;
use toric_seshadri::seshadri::{seshadri_batch, Point, TowerPoint};
use toric_seshadri::{builtin, BottNumbers, Builtin, DivisorClass, Execution, Fan};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn x3() -> Arc<Fan> {
    Arc::new(Fan::bott_tower(BottNumbers::from_rows(3, &[2, 1, 3]).unwrap()).unwrap())
}

fn profiles(c: &mut Criterion) {
    let mut g = c.benchmark_group("restriction_profile");
    let cases = [
        ("P^4 tangent", builtin(Arc::new(Fan::projective_space(4).unwrap()), &Builtin::Tangent).unwrap()),
        ("X_3 example", builtin(x3(), &Builtin::x3_default()).unwrap()),
    ];
    for (name, bundle) in &cases {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), bundle, |b, bundle| {
                b.iter(|| restriction_profile(black_box(bundle), exec).unwrap())
            });
        }
    }
    g.finish();
}

fn seshadri_points(c: &mut Criterion) {
    let fan = x3();
    let bundle = builtin(fan.clone(), &Builtin::x3_default()).unwrap();
    let bundle = bundle.twisted(&DivisorClass::from_i64(&[4, 2, 3])).unwrap();
    let profile = bundle.profile().unwrap();
    let points: Vec<Point> = (0..512i64)
        .map(|k| {
            let flat = [k % 7 + 1, 1, (k / 7) % 3, 1, (k / 21) % 2, k % 5 + 1];
            Point::Tower(TowerPoint::from_i64(&flat).unwrap())
        })
        .collect();
    let mut g = c.benchmark_group("seshadri_batch");
    for (mode, exec) in MODES {
        g.bench_function(BenchmarkId::new(mode, points.len()), |b| {
            b.iter(|| seshadri_batch(&fan, profile, black_box(&points), None, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, profiles, seshadri_points);
criterion_main!(benches);
