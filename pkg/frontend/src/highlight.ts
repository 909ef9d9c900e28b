// Small keyword-based syntax highlighter for snippet display. Known tags get
// token spans; anything unknown falls back to escaped plain monospace text.

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const KEYWORDS: Record<string, string[]> = {
  c: "auto break case char const continue default do double else enum extern float for goto if int long register return short signed sizeof static struct switch typedef union unsigned void volatile while".split(" "),
  cpp: "auto bool break case catch char class const continue delete do double else enum explicit extern false float for friend if inline int long namespace new nullptr operator private protected public return short signed sizeof static struct switch template this throw true try typedef typename union unsigned using virtual void while".split(" "),
  python: "and as assert async await break class continue def del elif else except finally for from global if import in is lambda None nonlocal not or pass raise return True False try while with yield".split(" "),
  javascript: "async await break case catch class const continue default delete do else export extends false finally for function if import in instanceof let new null of return static super switch this throw true try typeof undefined var void while yield".split(" "),
  java: "abstract boolean break byte case catch char class const continue default do double else enum extends final finally float for if implements import instanceof int interface long native new package private protected public return short static strictfp super switch synchronized this throw throws transient try void volatile while".split(" "),
};

const ALIASES: Record<string, string> = {
  "c++": "cpp",
  cxx: "cpp",
  h: "c",
  py: "python",
  python3: "python",
  js: "javascript",
  ts: "javascript",
  typescript: "javascript",
};

function keywordsFor(tag: string | null): string[] | null {
  if (!tag) return null;
  const folded = tag.trim().toLowerCase();
  const name = ALIASES[folded] ?? folded;
  return KEYWORDS[name] ?? null;
}

// One pass over the body: comments, then strings, then numbers and words.
const TOKEN = /(\/\/[^\n]*|#[^\n]*|\/\*[\s\S]*?\*\/)|("(?:\\.|[^"\\])*"|'(?:\\.|[^'\\])*')|(\b\d+(?:\.\d+)?\b)|([A-Za-z_][A-Za-z0-9_]*)/g;

export function highlight(body: string, languageTag: string | null): string {
  const keywords = keywordsFor(languageTag);
  if (keywords === null) {
    return escapeHtml(body);
  }
  const keywordSet = new Set(keywords);
  let out = "";
  let last = 0;
  for (const match of body.matchAll(TOKEN)) {
    const index = match.index ?? 0;
    out += escapeHtml(body.slice(last, index));
    const [text, comment, str, num, word] = match;
    if (comment) out += `<span class="tok-comment">${escapeHtml(text)}</span>`;
    else if (str) out += `<span class="tok-string">${escapeHtml(text)}</span>`;
    else if (num) out += `<span class="tok-number">${escapeHtml(text)}</span>`;
    else if (word && keywordSet.has(word)) out += `<span class="tok-keyword">${escapeHtml(text)}</span>`;
    else out += escapeHtml(text);
    last = index + text.length;
  }
  out += escapeHtml(body.slice(last));
  return out;
}
