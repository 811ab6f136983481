import { fetchPerspectives, fetchSample, postLabel, HttpError } from "./api.js";
import { filterPaneSegments, recipientPaneSegments } from "./diff.js";
import { rawSourceSegments, spanIndexForToken } from "./rawsource.js";
import { sandboxedDocument, IFRAME_SANDBOX_FLAGS } from "./sandbox.js";
import { SUBTYPES, TRICKS } from "./types.js";
import { toggle, validateLabel } from "./validation.js";
import { nextUnlabeled } from "./workflow.js";
const state = {
    items: [],
    currentId: null,
    perspectives: null,
    form: { has_concealment: false, subtypes: [], tricks: [], note: "" },
    showRawRender: false,
    busy: false,
};
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing element #${id}`);
    return node;
}
function banner(message, kind = "") {
    const b = el("banner");
    b.textContent = message;
    b.className = kind;
}
// --- pane rendering ---------------------------------------------------------
function renderTokenPane(container, segments, exclusiveClass, onClick) {
    container.replaceChildren();
    for (const seg of segments) {
        const node = document.createElement("span");
        node.textContent = seg.text;
        node.className = seg.exclusive ? `tok ${exclusiveClass}` : "tok";
        if (seg.exclusive && onClick) {
            node.addEventListener("click", () => onClick(seg.text));
        }
        container.appendChild(node);
        container.appendChild(document.createTextNode(" "));
    }
}
function renderRawPane(p) {
    const pane = el("raw-pane");
    pane.replaceChildren();
    for (const seg of rawSourceSegments(p.raw_source, p.spans)) {
        if (seg.spanIndex === null) {
            pane.appendChild(document.createTextNode(seg.text));
        }
        else {
            const mark = document.createElement("mark");
            mark.textContent = seg.text;
            mark.id = `span-anchor-${seg.spanIndex}`;
            mark.title = p.spans[seg.spanIndex].dom_path;
            pane.appendChild(mark);
        }
    }
}
function renderRenderedPane(p) {
    const frame = el("rendered-pane");
    frame.setAttribute("sandbox", IFRAME_SANDBOX_FLAGS);
    const source = state.showRawRender ? p.raw_source : p.normalized_html;
    frame.srcdoc = sandboxedDocument(source);
    el("render-toggle").textContent = state.showRawRender
        ? "showing: raw source"
        : "showing: normalized html";
}
function scrollToSpan(token) {
    if (!state.perspectives)
        return;
    const index = spanIndexForToken(token, state.perspectives.spans);
    if (index === null)
        return;
    const anchor = document.getElementById(`span-anchor-${index}`);
    anchor?.scrollIntoView({ block: "center" });
    anchor?.classList.add("flash");
    setTimeout(() => anchor?.classList.remove("flash"), 600);
}
function renderPerspectives() {
    const p = state.perspectives;
    if (!p)
        return;
    el("email-id").textContent = p.id;
    renderRawPane(p);
    renderRenderedPane(p);
    renderTokenPane(el("filter-pane"), filterPaneSegments(p.mail_filter_tokens, p.token_diff), "filter-only", scrollToSpan);
    renderTokenPane(el("recipient-pane"), recipientPaneSegments(p.recipient_tokens, p.token_diff), "recipient-only");
}
// --- label form --------------------------------------------------------------
function seedForm(p) {
    const base = p.human_labels ?? p.auto_labels;
    state.form = {
        has_concealment: base.has_concealment,
        subtypes: [...base.subtypes],
        tricks: [...base.tricks],
        note: "",
    };
    renderForm();
}
function renderForm() {
    el("concealed-yes").checked = state.form.has_concealment;
    el("concealed-no").checked = !state.form.has_concealment;
    for (const s of SUBTYPES) {
        el(`subtype-${s}`).checked = state.form.subtypes.includes(s);
    }
    for (const t of TRICKS) {
        el(`trick-${t}`).checked = state.form.tricks.includes(t);
    }
    const errors = validateLabel(state.form);
    el("form-errors").textContent = errors.join("; ");
    el("submit").disabled = errors.length > 0 || state.busy;
}
async function submitLabel() {
    if (!state.currentId || state.busy)
        return;
    const errors = validateLabel(state.form);
    if (errors.length) {
        banner(errors.join("; "), "error");
        return;
    }
    state.busy = true;
    renderForm();
    try {
        await postLabel(state.currentId, state.form);
        const item = state.items.find((i) => i.id === state.currentId);
        if (item)
            item.labeled = true;
        banner(`labeled ${state.currentId}`, "ok");
        renderSidebar();
        const next = nextUnlabeled(state.items, state.currentId);
        if (next) {
            await openEmail(next);
        }
        else {
            banner("all emails in this view are labeled", "ok");
        }
    }
    catch (err) {
        // form state is intentionally preserved for retry
        const detail = err instanceof HttpError ? `${err.status}: ${err.message}` : String(err);
        banner(`label not saved — ${detail}`, "error");
    }
    finally {
        state.busy = false;
        renderForm();
    }
}
// --- navigation ---------------------------------------------------------------
function renderSidebar() {
    const list = el("email-list");
    list.replaceChildren();
    for (const item of state.items) {
        const li = document.createElement("li");
        li.textContent = `${item.labeled ? "✓ " : "· "}${item.id}`;
        li.className = item.id === state.currentId ? "current" : "";
        li.addEventListener("click", () => void openEmail(item.id));
        list.appendChild(li);
    }
    const done = state.items.filter((i) => i.labeled).length;
    el("progress").textContent = `${done}/${state.items.length} labeled`;
}
async function openEmail(id) {
    try {
        const p = await fetchPerspectives(id);
        state.currentId = id;
        state.perspectives = p;
        seedForm(p);
        renderPerspectives();
        renderSidebar();
        banner("");
    }
    catch (err) {
        // schema mismatch or transport error: error banner, no partial render
        banner(`cannot open ${id} — ${String(err)}`, "error");
    }
}
// --- keyboard ------------------------------------------------------------------
const SUBTYPE_KEYS = {
    "1": "AddParagraph",
    "2": "DisruptWord",
    "3": "InsertWord",
};
const TRICK_KEYS = {
    q: "FontColour",
    w: "FontSize",
    e: "TextPosition",
    r: "TableManipulation",
    t: "Other",
};
function onKey(event) {
    if (event.target.tagName === "TEXTAREA")
        return;
    const key = event.key.toLowerCase();
    if (key === "y")
        state.form.has_concealment = true;
    else if (key === "n")
        state.form.has_concealment = false;
    else if (key in SUBTYPE_KEYS) {
        state.form.subtypes = toggle(state.form.subtypes, SUBTYPE_KEYS[key]);
    }
    else if (key in TRICK_KEYS) {
        state.form.tricks = toggle(state.form.tricks, TRICK_KEYS[key]);
    }
    else if (key === "enter") {
        void submitLabel();
        return;
    }
    else if (key === "j") {
        const next = nextUnlabeled(state.items, state.currentId);
        if (next)
            void openEmail(next);
        return;
    }
    else {
        return;
    }
    renderForm();
}
// --- boot ------------------------------------------------------------------------
function wireForm() {
    el("concealed-yes").addEventListener("change", () => {
        state.form.has_concealment = true;
        renderForm();
    });
    el("concealed-no").addEventListener("change", () => {
        state.form.has_concealment = false;
        renderForm();
    });
    for (const s of SUBTYPES) {
        el(`subtype-${s}`).addEventListener("change", () => {
            state.form.subtypes = toggle(state.form.subtypes, s);
            renderForm();
        });
    }
    for (const t of TRICKS) {
        el(`trick-${t}`).addEventListener("change", () => {
            state.form.tricks = toggle(state.form.tricks, t);
            renderForm();
        });
    }
    el("note").addEventListener("input", (e) => {
        state.form.note = e.target.value;
    });
    el("submit").addEventListener("click", () => void submitLabel());
    el("render-toggle").addEventListener("click", () => {
        state.showRawRender = !state.showRawRender;
        if (state.perspectives)
            renderRenderedPane(state.perspectives);
    });
    document.addEventListener("keydown", onKey);
}
async function boot() {
    wireForm();
    try {
        const page = await fetchSample();
        state.items = page.items;
        renderSidebar();
        const first = nextUnlabeled(state.items, null) ?? state.items[0]?.id ?? null;
        if (first)
            await openEmail(first);
        else
            banner("sample is empty", "error");
    }
    catch (err) {
        banner(`cannot load sample — ${String(err)}`, "error");
    }
}
void boot();
