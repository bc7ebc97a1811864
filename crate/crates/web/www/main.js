import init, { transfer_curves, snapshot, sudden_death_map } from "./pkg/entangle_web.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];
const $ = (id) => document.getElementById(id);

function params() {
  return {
    kind: $("kind").value,
    alpha: +$("alpha").value,
    ga: +$("ga").value,
    gb: +$("gb").value,
    delta: +$("delta").value,
    gamma: +$("gamma").value,
    tmax: +$("tmax").value,
  };
}

function plot(canvas, xs, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, 8, w - pad - 8, h - pad - 8);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  const xmax = xs[xs.length - 1];
  const X = (x) => pad + (x / xmax) * (w - pad - 8);
  const Y = (y) => h - pad - y * (h - pad - 16);
  for (const y of [0, 0.25, 0.5, 0.75, 1]) ctx.fillText(y.toFixed(2), 2, Y(y) + 4);
  for (let k = 0; k <= 6; k++) ctx.fillText((xmax * k / 6).toFixed(1), X(xmax * k / 6) - 8, h - pad + 14);
  series.forEach(({ values, color, dash }) => {
    ctx.beginPath();
    ctx.setLineDash(dash || []);
    ctx.strokeStyle = color;
    values.forEach((v, i) => (i ? ctx.lineTo(X(xs[i]), Y(v)) : ctx.moveTo(X(xs[i]), Y(v))));
    ctx.stroke();
  });
  ctx.setLineDash([]);
}

function drawCurves() {
  const p = params();
  const c = JSON.parse(transfer_curves(p.kind, p.alpha, p.ga, p.gb, p.delta, p.gamma, p.tmax, 600));
  const series = [
    { label: "C_AB^2", values: c.cab2, color: "#000", dash: [6, 4] },
    { label: "SSPC", values: c.sspc, color: "#555" },
    ...c.pair_labels.map((label, k) => ({ label, values: c.pairs[k], color: COLORS[k] })),
    ...c.site_labels.map((label, k) => ({ label, values: c.site[k], color: COLORS[4 + k], dash: [2, 3] })),
  ];
  if (c.yonac) series.push({ label: "C11+C22", values: c.yonac, color: "#bcbd22", dash: [8, 2] });
  plot($("curves"), c.gt, series);
  $("curves-legend").innerHTML = series.map((s) => `<span style="color:${s.color}">&#9632; ${s.label}</span>`).join("");
  $("summary").textContent = c.summary;
  $("gt").max = p.tmax;
}

function drawSnapshot() {
  const p = params();
  const gt = +$("gt").value;
  $("gt-value").textContent = gt.toFixed(2);
  const s = JSON.parse(snapshot(p.kind, p.alpha, p.ga, p.gb, p.delta, gt));
  const tables = s.pairs.map((pair) => {
    const rows = pair.rho_abs.map((r) => `<tr>${r.map((v) => `<td>${v.toFixed(3)}</td>`).join("")}</tr>`).join("");
    return `<div style="display:inline-block;vertical-align:top">
      <b>${pair.label}</b> |&rho;|<table>${rows}</table><br>
      C closed ${pair.closed.toFixed(6)}<br>C Wootters ${pair.wootters.toFixed(6)}<br>C register ${pair.oracle.toFixed(6)}</div>`;
  });
  $("snapshot").innerHTML = `<p>C<sub>AB</sub> = ${s.cab.toFixed(6)}, pairwise sum = ${s.sspc.toFixed(6)}</p>` + tables.join("");
}

function drawDeath() {
  const canvas = $("death");
  const m = JSON.parse(sudden_death_map(90, 320, Math.PI));
  const ctx = canvas.getContext("2d");
  const cw = canvas.width / m.gt.length;
  const ch = canvas.height / m.alpha.length;
  m.ratio.forEach((row, i) => {
    row.forEach((r, j) => {
      ctx.fillStyle = r === 0 ? "#000" : `hsl(${220 - 200 * r}, 70%, ${35 + 30 * r}%)`;
      ctx.fillRect(j * cw, canvas.height - (i + 1) * ch, cw + 1, ch + 1);
    });
  });
  ctx.fillStyle = "#fff";
  ctx.fillText("alpha ↑   gt → (0 to π)", 6, 14);
}

function guarded(f) {
  return () => {
    try {
      $("error").textContent = "";
      f();
    } catch (e) {
      $("error").textContent = String(e);
    }
  };
}

await init();
const redraw = guarded(() => {
  drawCurves();
  drawSnapshot();
});
for (const id of ["kind", "alpha", "ga", "gb", "delta", "gamma", "tmax"]) $(id).addEventListener("change", redraw);
$("gt").addEventListener("input", guarded(drawSnapshot));
redraw();
guarded(drawDeath)();
