import { Client } from './api.js';
import { render } from './render.js';
import { Dashboard } from './state.js';
import { buildViewModel } from './view.js';

const params = new URLSearchParams(window.location.search);
const apiBase = params.get('api') ?? 'http://localhost:8000';

const dashboard = new Dashboard(new Client(apiBase), { initialLossMw: 100 });
const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');

dashboard.onChange(() => render(root, buildViewModel(dashboard), dashboard));
void dashboard.load();
