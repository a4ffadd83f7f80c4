// A lone present-biased agent replanning at every vertex.
use biasgraph::agent::{cost_ratio, AgentConfig, Simulator};
use biasgraph::graph::{make_fan, make_named_instance, FanSpec, NamedInstance};
use biasgraph::rational::{int, render};

fn main() {
    let g = make_named_instance(&NamedInstance::Fig1).unwrap();
    let config = AgentConfig::new(int(2)).unwrap();
    let trace = Simulator::new(&g).traverse(&config, None, &int(0)).unwrap();

    for step in &trace.steps {
        let other = step.runner_up().map(|a| format!(" over {} ({})", a.vertex.1, render(&a.perceived)));
        println!("at {}: go to {} ({}){}", step.at.1, step.chose.1, render(&step.perceived), other.unwrap_or_default());
    }
    println!("walked {} for {}", g.describe(trace.path.vertices()), render(trace.path.cost()));
    println!("cost ratio {}", render(&cost_ratio(&g, &config).unwrap()));

    // on the fan the ratio grows like c^n
    for n in [2, 4, 8] {
        let fan = make_fan(&FanSpec::new(n, int(2)).unwrap());
        let ratio = cost_ratio(&fan, &AgentConfig::new(int(3)).unwrap()).unwrap();
        println!("{n}-fan, c=2, b=3: ratio {}", render(&ratio));
    }
}
