import init, { torque_curve, tsa_curve, simulate } from "./pkg/tsa_exo_web.js";

const $ = (id) => document.getElementById(id);

// Minimal line plot: series = [{ ys, color, label }], optional band = [lo, hi] on y.
function plot(canvas, xs, series, { xlabel, ylabel, logY = false, band = null } = {}) {
  const dpr = window.devicePixelRatio || 1;
  const w = canvas.clientWidth, h = canvas.clientHeight;
  canvas.width = w * dpr;
  canvas.height = h * dpr;
  const ctx = canvas.getContext("2d");
  ctx.scale(dpr, dpr);
  ctx.clearRect(0, 0, w, h);

  const pad = { l: 58, r: 12, t: 18, b: 36 };
  const tf = logY ? (v) => Math.log10(v) : (v) => v;
  const all = series.flatMap((s) => Array.from(s.ys)).filter((v) => Number.isFinite(tf(v)));
  let [y0, y1] = [Math.min(...all.map(tf)), Math.max(...all.map(tf))];
  if (band) { y0 = Math.min(y0, tf(band[0])); y1 = Math.max(y1, tf(band[1])); }
  if (y1 - y0 < 1e-12) { y0 -= 1; y1 += 1; }
  const [x0, x1] = [xs[0], xs[xs.length - 1]];
  const px = (x) => pad.l + ((x - x0) / (x1 - x0 || 1)) * (w - pad.l - pad.r);
  const py = (y) => h - pad.b - ((tf(y) - y0) / (y1 - y0)) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad.l, pad.t, w - pad.l - pad.r, h - pad.t - pad.b);
  if (band) {
    ctx.fillStyle = "rgba(60, 160, 90, 0.12)";
    ctx.fillRect(pad.l, py(band[1]), w - pad.l - pad.r, py(band[0]) - py(band[1]));
  }

  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  for (let i = 0; i <= 4; i++) {
    const x = x0 + ((x1 - x0) * i) / 4;
    ctx.fillText(x.toPrecision(3), px(x) - 12, h - pad.b + 14);
    const yv = y0 + ((y1 - y0) * i) / 4;
    const label = logY ? (10 ** yv).toExponential(1) : yv.toPrecision(3);
    ctx.fillText(label, 4, h - pad.b - ((yv - y0) / (y1 - y0)) * (h - pad.t - pad.b) + 4);
  }
  if (xlabel) ctx.fillText(xlabel, w / 2 - 20, h - 6);
  if (ylabel) ctx.fillText(ylabel, pad.l + 4, pad.t - 5);

  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    s.ys.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
    if (s.label) {
      ctx.fillStyle = s.color;
      ctx.fillText(s.label, w - pad.r - 110, pad.t + 14 + 13 * k);
    }
  });
}

function guarded(fn, sink) {
  try {
    fn();
    sink.classList.remove("error");
  } catch (e) {
    sink.textContent = String(e);
    sink.classList.add("error");
  }
}

function drawStatics() {
  const massMax = +$("massMax").value, com = +$("com").value;
  $("massMaxOut").textContent = massMax.toFixed(1);
  $("comOut").textContent = com.toFixed(3);
  guarded(() => {
    const c = torque_curve(0, massMax, 61, com, 9.81);
    plot($("torquePlot"), c.mass, [{ ys: c.torque, color: "#1f5fa8", label: "m·g·d" }],
      { xlabel: "forearm mass [kg]", ylabel: "torque [N·m]", band: [1.5, 3.0] });
    $("torqueNote").textContent =
      "shaded: 1.5–3 N·m design band; 2.5 kg at " + com + " m needs " + (2.5 * 9.81 * com).toFixed(4) + " N·m";
  }, $("torqueNote"));
}

function drawTsa() {
  const len = +$("len").value / 1000, rad = +$("rad").value / 1000, tau = +$("tau").value;
  $("lenOut").textContent = (len * 1000).toFixed(0);
  $("radOut").textContent = (rad * 1000).toFixed(2);
  $("tauOut").textContent = tau.toFixed(2);
  guarded(() => {
    const c = tsa_curve(len, rad, tau, 0.98, 200);
    plot($("contractionPlot"), c.twist, [{ ys: c.contracted.map((x) => x * 1000), color: "#1f5fa8", label: "X [mm]" }],
      { xlabel: "twist θ [rad]", ylabel: "contracted length [mm]" });
    plot($("forcePlot"), c.twist, [{ ys: c.pull_force, color: "#b5531c", label: "F at τ" }],
      { xlabel: "twist θ [rad]", ylabel: "pull force [N]", logY: true });
    $("tsaNote").textContent = "string capacity L/r = " + (len / rad).toFixed(2) + " rad";
  }, $("tsaNote"));
}

function drawController() {
  const speed = +$("speed").value, cycles = +$("cycles").value, stop = +$("stop").value;
  $("speedOut").textContent = speed.toFixed(2);
  $("cyclesOut").textContent = cycles;
  $("stopOut").textContent = stop > 0 ? stop.toFixed(1) + " s" : "never";
  guarded(() => {
    const t = simulate(cycles, speed, stop > 0 ? stop : -1, 0.035, 0.001, 0.01, 11, 1);
    plot($("encoderPlot"), t.time, [{ ys: t.encoder, color: "#1f5fa8", label: "encoder [pulses]" }],
      { xlabel: "time [s]", ylabel: "motor position [pulses]" });
    plot($("jointPlot"), t.time, [{ ys: t.joint_deg, color: "#2d8a4e", label: "joint [°]" }],
      { xlabel: "time [s]", ylabel: "joint angle [°]" });
    $("summary").textContent = t.summary;
  }, $("summary"));
}

await init();
for (const id of ["massMax", "com"]) $(id).addEventListener("input", drawStatics);
for (const id of ["len", "rad", "tau"]) $(id).addEventListener("input", drawTsa);
for (const id of ["speed", "cycles", "stop"]) $(id).addEventListener("input", drawController);
drawStatics();
drawTsa();
drawController();
