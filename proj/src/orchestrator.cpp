// Copyright 2026 The Apimorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "orchestrator.hpp"

#include <set>

#include "constraints.hpp"
#include "errmsg.hpp"
#include "error.hpp"
#include "sketch.hpp"

namespace apimorph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Most hypotheses probed for one failing candidate.
constexpr std::size_t kMaxProbedHypotheses = 8;

}  // namespace

void MigrationConfig::validate() const {
  if (top_k < 1) throw Error(ErrorKind::kUsage, "top-k must be at least 1");
  if (max_sketch_size < 1) throw Error(ErrorKind::kUsage, "max sketch size must be at least 1");
  if (!(global_timeout > 0)) throw Error(ErrorKind::kUsage, "timeout must be positive");
  if (enumeration_budget < 1) throw Error(ErrorKind::kUsage, "budget must be at least 1");
}

std::string LineOutcome::snippet_text() const {
  std::string out;
  for (std::size_t i = 0; i < snippet.size(); ++i) out += (i ? "; " : "") + snippet[i].to_text();
  return out;
}

LineOutcome refactor_line(const CallSite& line, const std::vector<TestCase>& line_tests, const LineContext& ctx) {
  const auto t0 = Clock::now();
  LineOutcome out;
  out.line_index = line.line_index;
  out.source = line.to_text();
  const TokenSimilarity similarity(ctx.embeddings);
  const auto vocab = ctx.runtime.reshaping_vocabulary();

  std::vector<ShapeBinding> shapes;
  for (const auto& t : line_tests) {
    ShapeBinding b;
    if (auto it = t.inputs.find(line.data_input); it != t.inputs.end() && it->second.is_tensor())
      b.in = it->second.shape();
    if (t.expected_output.is_tensor()) b.out = t.expected_output.shape();
    shapes.push_back(std::move(b));
  }

  // Integer candidates also cover every extent of the shapes the line sees.
  std::set<std::int64_t> seed_set;
  for (auto v : default_int_seed_pool()) seed_set.insert(v);
  for (const auto& b : shapes) {
    if (b.in) seed_set.insert(b.in->begin(), b.in->end());
    if (b.out) seed_set.insert(b.out->begin(), b.out->end());
  }
  const std::vector<std::int64_t> int_seed(seed_set.begin(), seed_set.end());

  auto finish = [&](std::string reason) {
    out.failure_reason = std::move(reason);
    out.elapsed_seconds = seconds_since(t0);
    return out;
  };

  const auto ranking = rank_targets(ctx.similarity, line.callee, ctx.config.top_k);
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    const ApiEntry& api = ctx.target.at(ranking[r].first);
    auto sketches = generate_sketches(api, ctx.config.max_sketch_size, vocab, &ctx.target);
    for (auto& sketch : sketches) {
      if (!populate_domains(sketch, line, api, int_seed)) continue;
      ++out.sketches_tried;
      ConstraintSet cs = compile_spec_constraints(api, sketch, shapes, ctx.config.use_spec_constraints);
      Enumerator en(sketch, cs, ctx.config.enumeration_budget);

      while (auto a = en.next()) {
        if (Clock::now() >= ctx.deadline) return finish("global timeout reached");
        const auto values = assignment_values(sketch, *a);
        const CandidateProgram cand = realize_values(sketch, values, line.binds, line.data_input);
        EvalResult res = evaluate_all(ctx.runtime, cand.text(line.data_input), line_tests);
        ++out.candidates_tested;
        if (res.status == EvalStatus::kPass) {
          out.migrated = true;
          out.snippet = cand.calls;
          out.target_api = api.qualified_name;
          out.api_rank = static_cast<int>(r) + 1;
          out.sketch = sketch.to_string();
          out.elapsed_seconds = seconds_since(t0);
          return out;
        }
        if (res.status != EvalStatus::kError || !ctx.config.use_error_learning) continue;

        auto match = classify(res.message);
        if (!match) continue;
        auto hypotheses = hypothesize(res.message, *match, sketch, values, similarity);
        auto run_mutant = [&](const std::vector<Literal>& mutated) {
          CandidateProgram m = realize_values(sketch, mutated, line.binds, line.data_input);
          return evaluate_all(ctx.runtime, m.text(line.data_input), line_tests);
        };
        for (std::size_t h = 0; h < hypotheses.size() && h < kMaxProbedHypotheses; ++h) {
          ProbeOutcome p = probe(hypotheses[h], values, res.message, run_mutant);
          out.probe_evaluations += static_cast<std::uint64_t>(p.evaluations);
          if (p.status != ProbeStatus::kConfirmed) continue;
          // Only constraints that rule out the failing assignment are kept.
          if (!satisfies(Constraint{p.constraint, Provenance::kLearned}, values)) {
            en.add_learned(p.constraint);
            ++out.learned_constraints;
          }
          break;
        }
      }
    }
  }
  return finish(ranking.empty() ? "no ranked target API" : "no candidate passed the line tests");
}

MigrationResult synthesize(const Program& program, const DocCorpus& source, const DocCorpus& target,
                           const std::vector<TestCase>& tests, const MigrationConfig& config,
                           RuntimeAdapter& runtime, const EmbeddingTable* embeddings) {
  config.validate();
  const auto t0 = Clock::now();
  CachingRuntime cached(runtime);
  MigrationResult result;
  MigrationReport& report = result.report;
  report.config = config;
  report.backend = runtime.backend_id();

  auto line_tests = generate_line_tests(program, tests, cached);
  const SimilarityMatrix matrix = build_similarity(source, target, config.mode, embeddings);
  const auto deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(config.global_timeout));
  LineContext ctx{source, target, matrix, embeddings, config, cached, deadline};

  Program& outp = result.program;
  outp.input_vars = program.input_vars;
  bool stopped = false;
  for (const auto& line : program.lines) {
    if (stopped) {
      LineOutcome skipped;
      skipped.line_index = line.line_index;
      skipped.source = line.to_text();
      skipped.failure_reason = "not attempted: an earlier line failed";
      report.lines.push_back(std::move(skipped));
      outp.lines.push_back(line);
      continue;
    }
    LineOutcome lo = refactor_line(line, line_tests[line.line_index], ctx);
    report.candidates_tested += lo.candidates_tested;
    report.probe_evaluations += lo.probe_evaluations;
    if (lo.migrated) {
      for (const auto& c : lo.snippet) outp.lines.push_back(c);
    } else {
      stopped = true;
      report.timed_out = Clock::now() >= deadline;
      outp.lines.push_back(line);
    }
    report.lines.push_back(std::move(lo));
  }

  // Renumber and mark inputs that are not the previous line's result.
  for (std::size_t i = 0; i < outp.lines.size(); ++i) {
    auto& c = outp.lines[i];
    c.line_index = static_cast<int>(i);
    const std::string implicit = i == 0 ? (outp.input_vars.empty() ? "" : outp.input_vars.front())
                                        : outp.lines[i - 1].binds;
    c.explicit_input = c.data_input != implicit;
  }

  report.complete = !stopped;
  if (report.complete) {
    const std::string text = outp.to_text();
    report.tests_passed = true;
    for (const auto& t : tests) {
      if (cached.evaluate(text, t).status != EvalStatus::kPass) {
        report.tests_passed = false;
        break;
      }
    }
  }
  report.wall_seconds = seconds_since(t0);
  return result;
}

}  // namespace apimorph
