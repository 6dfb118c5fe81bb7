import init, { rr_table, search, wps_scan } from "./pkg/qfano_web.js";

const $ = (id) => document.getElementById(id);

function esc(s) {
  return String(s).replace(/[&<>"]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" }[c]));
}

function table(head, rows) {
  const th = head.map((h) => `<th>${esc(h)}</th>`).join("");
  const body = rows
    .map((r) => "<tr>" + r.map((c, k) => `<td${k === 1 ? ' class="l"' : ""}>${esc(c ?? "")}</td>`).join("") + "</tr>")
    .join("");
  return `<table><thead><tr>${th}</tr></thead><tbody>${body}</tbody></table>`;
}

function fail(el, e) {
  el.innerHTML = `<p class="err">${esc(e.message ?? e)}</p>`;
}

function plot(canvas, points) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 36;
  ctx.clearRect(0, 0, w, h);
  if (points.length === 0) return;
  const ts = points.map((p) => p.t), ys = points.map((p) => p.chi_value);
  const t0 = Math.min(...ts), t1 = Math.max(...ts);
  const y0 = Math.min(0, ...ys), y1 = Math.max(0, ...ys);
  const x = (t) => pad + ((t - t0) / Math.max(1, t1 - t0)) * (w - 2 * pad);
  const y = (v) => h - pad - ((v - y0) / Math.max(1e-9, y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#bbb";
  ctx.beginPath();
  ctx.moveTo(pad, y(0)); ctx.lineTo(w - pad, y(0));
  if (t0 <= 0 && t1 >= 0) { ctx.moveTo(x(0), pad / 2); ctx.lineTo(x(0), h - pad); }
  ctx.stroke();

  ctx.fillStyle = "#666";
  ctx.font = "11px system-ui";
  ctx.textAlign = "center";
  const step = Math.max(1, Math.ceil((t1 - t0) / 20));
  for (let t = t0; t <= t1; t += step) ctx.fillText(t, x(t), h - pad + 14);
  ctx.textAlign = "right";
  ctx.fillText(y1.toFixed(0), pad - 4, y(y1) + 4);
  ctx.fillText(y0.toFixed(0), pad - 4, y(y0) + 4);

  ctx.strokeStyle = "#3461c1";
  ctx.beginPath();
  points.forEach((p, k) => (k ? ctx.lineTo(x(p.t), y(p.chi_value)) : ctx.moveTo(x(p.t), y(p.chi_value))));
  ctx.stroke();
  for (const p of points) {
    ctx.fillStyle = Number.isInteger(p.chi_value) ? "#3461c1" : "#d0342c";
    ctx.beginPath();
    ctx.arc(x(p.t), y(p.chi_value), 3, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function runRr() {
  const out = $("rr-out");
  try {
    const r = JSON.parse(
      rr_table($("rr-basket").value, +$("rr-q").value, $("rr-l3").value, +$("rr-tmin").value, +$("rr-tmax").value),
    );
    out.innerHTML =
      `<p>L&sup3; = ${esc(r.l_cubed)}, &minus;K&sup3; = ${esc(r.degree)}, &minus;K&middot;c&#8322; = ${esc(r.kc2)}</p>` +
      table(["t", "χ(tL)", "dim |tL|"], r.points.map((p) => [p.t, p.chi, p.dim]));
    plot($("rr-plot"), r.points);
  } catch (e) {
    fail(out, e);
    plot($("rr-plot"), []);
  }
}

function runSearch() {
  const out = $("search-out");
  out.innerHTML = "<p class=\"note\">searching&hellip;</p>";
  setTimeout(() => {
    try {
      const t = performance.now();
      const rows = JSON.parse(search($("s-min").value, +$("s-qmin").value, $("s-slack").checked));
      const ms = (performance.now() - t).toFixed(0);
      out.innerHTML =
        `<p class="note">${rows.length} candidates in ${ms} ms</p>` +
        table(
          ["q", "basket", "−K³", "L³", "−K·c₂", "dim |tL|, t = 1..q", "dim |−K|"],
          rows.map((c) => [c.q, `${c.label}  ${c.basket.map((p) => `${p.r}:${p.b}`).join(",")}`, c.degree, c.l_cubed, c.kc2, c.dims.join(", "), c.antican_dim]),
        );
    } catch (e) {
      fail(out, e);
    }
  }, 10);
}

function runWps() {
  const out = $("wps-out");
  try {
    const rows = JSON.parse(wps_scan(+$("w-max").value));
    out.innerHTML = table(
      ["weights", "basket", "−K³", "index", "dim |−K|"],
      rows.map((s) => [`P(${s.weights.join(",")})`, s.basket || "smooth", s.degree, s.index, s.antican_dim]),
    );
  } catch (e) {
    fail(out, e);
  }
}

function bind(form, fn) {
  $(form).addEventListener("submit", (ev) => {
    ev.preventDefault();
    fn();
  });
}

await init();
bind("rr-form", runRr);
bind("search-form", runSearch);
bind("wps-form", runWps);
runRr();
runWps();
