use planar_centers::checks::run_target;
use planar_centers::config::Config;

fn main() {
    let mut cfg = Config::default();
    cfg.allow_unverified_fixtures = true;
    for name in ["radical-identities", "component-varieties"] {
        let v = run_target(name, &cfg).unwrap();
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    }
}
